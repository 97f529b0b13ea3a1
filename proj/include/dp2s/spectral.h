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

#ifndef DP2S_SPECTRAL_H_
#define DP2S_SPECTRAL_H_

#include <functional>
#include <optional>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "dp2s/mechanisms.h"

namespace dp2s {

enum class EigenSource { kDense, kLanczos };

struct EigenResult {
  double lambda_min = 0.0;
  std::optional<Eigen::VectorXd> direction;
  EigenSource source = EigenSource::kDense;
  int iterations = 0;
  int hvp_calls = 0;
  int restarts = 0;
  bool dense_fallback = false;
};

absl::StatusOr<EigenResult> MinEigenpairDense(const Eigen::MatrixXd& h);

// Symmetric linear map given by its action. `dense`, when set, is the same
// map as a matrix and is only used as a last-resort fallback.
struct SymmetricOperator {
  int dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply;
  const Eigen::MatrixXd* dense = nullptr;
};

// min{d, 1 + ceil(ln(2.75 d / delta^2) / 2 * sqrt(norm_bound / eps))}.
int LanczosIterationCap(int d, double norm_bound, double eps, double delta);

// Smallest eigenvalue to absolute precision eps/2 with probability at least
// 1 - delta_l when ||H|| <= norm_bound.
absl::StatusOr<EigenResult> LanczosMinEig(const SymmetricOperator& op,
                                          double norm_bound, double eps,
                                          double delta_l, SeededRng& rng,
                                          int dense_cap = 512);

struct CurvatureDecision {
  bool negative_curvature = false;
  double lambda = 0.0;
  std::optional<Eigen::VectorXd> direction;
};

// Lanczos estimates are thresholded at -eps_h/2, dense ones at -eps_h.
CurvatureDecision DecideCurvature(const EigenResult& result, double eps_h);

// Returns +direction or -direction, whichever has a nonpositive inner product
// with g_noisy; an exact tie keeps the input sign.
Eigen::VectorXd Orient(const Eigen::VectorXd& direction,
                       const Eigen::VectorXd& g_noisy);

}  // namespace dp2s

#endif  // DP2S_SPECTRAL_H_
