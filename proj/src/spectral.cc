//
// Copyright 2026 The dp2s Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dp2s/spectral.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_format.h"

namespace dp2s {
namespace {

// Relative size of the next Lanczos residual below which the Krylov space is
// treated as invariant.
constexpr double kBreakdownTolerance = 1e-10;

Eigen::VectorXd RandomUnit(int d, SeededRng& rng) {
  Eigen::VectorXd v = GaussianVector(d, 1.0, rng);
  return v / v.norm();
}

// Removes components along the first `count` columns of q, twice.
void Reorthogonalize(const Eigen::MatrixXd& q, int count, Eigen::VectorXd& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < count; ++j) v -= q.col(j).dot(v) * q.col(j);
  }
}

}  // namespace

absl::StatusOr<EigenResult> MinEigenpairDense(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    return absl::InvalidArgumentError("matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    return absl::InvalidArgumentError(
        absl::StrFormat("matrix is not symmetric (max |H - H^T| = %g)", asym));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    return absl::InternalError("symmetric eigensolver did not converge");
  }
  EigenResult result;
  result.lambda_min = solver.eigenvalues()[0];
  result.direction = solver.eigenvectors().col(0).normalized();
  result.source = EigenSource::kDense;
  return result;
}

int LanczosIterationCap(int d, double norm_bound, double eps, double delta) {
  const double k = 0.5 * std::log(2.75 * d / (delta * delta)) *
                   std::sqrt(norm_bound / eps);
  const double cap = 1.0 + std::ceil(k);
  return cap >= d ? d : static_cast<int>(cap);
}

absl::StatusOr<EigenResult> LanczosMinEig(const SymmetricOperator& op,
                                          double norm_bound, double eps,
                                          double delta_l, SeededRng& rng,
                                          int dense_cap) {
  if (!(eps > 0.0)) return absl::InvalidArgumentError("eps must be positive");
  if (!(delta_l > 0.0 && delta_l < 1.0)) {
    return absl::InvalidArgumentError("delta_l must lie in (0, 1)");
  }
  if (!(norm_bound > 0.0)) {
    return absl::InvalidArgumentError("norm bound must be positive");
  }
  const int d = op.dim;
  if (d < 1 || !op.apply) return absl::InvalidArgumentError("empty operator");
  const int cap = LanczosIterationCap(d, norm_bound, eps, delta_l);

  Eigen::MatrixXd q(d, cap);
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples q_j and q_{j+1}
  EigenResult result;
  result.source = EigenSource::kLanczos;

  Eigen::VectorXd v = RandomUnit(d, rng);
  int k = 0;
  bool second_breakdown = false;
  while (k < cap) {
    q.col(k) = v;
    const Eigen::VectorXd hv = op.apply(v);
    ++result.hvp_calls;
    const double a = v.dot(hv);
    alpha.push_back(a);
    Eigen::VectorXd r = hv - a * v;
    if (k > 0) r -= beta[k - 1] * q.col(k - 1);
    ++k;
    Reorthogonalize(q, k, r);
    const double b = r.norm();
    if (k == cap) break;
    if (b > kBreakdownTolerance * norm_bound) {
      beta.push_back(b);
      v = r / b;
      continue;
    }
    // The Krylov space is invariant. Restart once with a fresh direction
    // orthogonal to it; the tridiagonal matrix then splits into blocks.
    if (result.restarts >= 1) {
      second_breakdown = true;
      break;
    }
    ++result.restarts;
    Eigen::VectorXd fresh = RandomUnit(d, rng);
    Reorthogonalize(q, k, fresh);
    const double norm = fresh.norm();
    if (norm <= kBreakdownTolerance) break;  // the basis already spans R^d
    beta.push_back(0.0);
    v = fresh / norm;
  }
  result.iterations = k;

  if (second_breakdown && op.dense != nullptr && d <= dense_cap) {
    absl::StatusOr<EigenResult> dense = MinEigenpairDense(*op.dense);
    if (!dense.ok()) return dense.status();
    dense->source = EigenSource::kLanczos;
    dense->iterations = result.iterations;
    dense->hvp_calls = result.hvp_calls;
    dense->restarts = result.restarts;
    dense->dense_fallback = true;
    return dense;
  }

  Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
  Eigen::VectorXd sub(std::max(k - 1, 0));
  for (int j = 0; j + 1 < k; ++j) sub[j] = beta[j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (tri.info() != Eigen::Success) {
    return absl::InternalError("tridiagonal eigensolver did not converge");
  }
  result.lambda_min = tri.eigenvalues()[0];
  Eigen::VectorXd ritz = q.leftCols(k) * tri.eigenvectors().col(0);
  result.direction = ritz / ritz.norm();
  return result;
}

CurvatureDecision DecideCurvature(const EigenResult& result, double eps_h) {
  CurvatureDecision decision;
  decision.lambda = result.lambda_min;
  decision.negative_curvature = result.source == EigenSource::kLanczos
                                    ? result.lambda_min <= -0.5 * eps_h
                                    : result.lambda_min < -eps_h;
  if (decision.negative_curvature) decision.direction = result.direction;
  return decision;
}

Eigen::VectorXd Orient(const Eigen::VectorXd& direction,
                       const Eigen::VectorXd& g_noisy) {
  return direction.dot(g_noisy) > 0.0 ? Eigen::VectorXd(-direction) : direction;
}

}  // namespace dp2s
