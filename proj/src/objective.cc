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

#include "dp2s/objective.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_format.h"
#include "dp2s/status_macros.h"

namespace dp2s {

absl::StatusOr<Dataset> Dataset::Create(RowMatrix features,
                                        Eigen::VectorXd labels,
                                        std::optional<double> norm_bound) {
  if (features.rows() < 1 || features.cols() < 1) {
    return absl::InvalidArgumentError("dataset needs at least one row and column");
  }
  if (labels.size() != features.rows()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%d labels for %d rows", labels.size(), features.rows()));
  }
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1.0 && labels[i] != -1.0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("label %g at row %d is not +1 or -1", labels[i], i));
    }
  }
  if (!features.allFinite()) {
    return absl::InvalidArgumentError("features contain non-finite values");
  }
  const double max_norm = features.rowwise().norm().maxCoeff();
  double bound = max_norm;
  if (norm_bound.has_value()) {
    if (*norm_bound < max_norm) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "declared norm bound %g is below the largest row norm %g",
          *norm_bound, max_norm));
    }
    bound = *norm_bound;
  }
  return Dataset(std::move(features), std::move(labels), bound);
}

Batch Batch::Full(const Dataset& data) {
  Batch b;
  b.full_x_ = &data.features();
  b.full_y_ = &data.labels();
  return b;
}

Batch Batch::Rows(const Dataset& data, const std::vector<int>& indices) {
  auto x = std::make_shared<RowMatrix>(indices.size(), data.dim());
  auto y = std::make_shared<Eigen::VectorXd>(indices.size());
  for (size_t r = 0; r < indices.size(); ++r) {
    x->row(r) = data.features().row(indices[r]);
    (*y)[r] = data.labels()[indices[r]];
  }
  Batch b;
  b.owned_x_ = std::move(x);
  b.owned_y_ = std::move(y);
  return b;
}

std::vector<int> BatchSelector::SampleIndices(int n, int m, SeededRng& rng) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < m; ++i) {
    const int j = i + static_cast<int>(rng.UniformInt(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

absl::StatusOr<Batch> BatchSelector::Draw(const Dataset& data,
                                          SeededRng& rng) const {
  const int n = data.num_samples();
  if (is_full() || m_ == n) return Batch::Full(data);
  if (m_ < 1 || m_ > n) {
    return absl::InvalidArgumentError(
        absl::StrFormat("batch size %d outside [1, %d]", m_, n));
  }
  return Batch::Rows(data, SampleIndices(n, m_, rng));
}

double Objective::Value(const Eigen::VectorXd& w) const {
  return model_->Value(batch_, w);
}

Eigen::VectorXd Objective::Gradient(const Eigen::VectorXd& w) const {
  return model_->Gradient(batch_, w);
}

absl::StatusOr<Eigen::MatrixXd> Objective::Hessian(
    const Eigen::VectorXd& w) const {
  if (model_->dim() > dense_cap_) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "dimension %d exceeds the dense Hessian cap %d; use Hvp",
        model_->dim(), dense_cap_));
  }
  return model_->Hessian(batch_, w);
}

Eigen::VectorXd Objective::Hvp(const Eigen::VectorXd& w,
                               const Eigen::VectorXd& v) const {
  return model_->HessianVectorProduct(batch_, w, v);
}

absl::StatusOr<EvalResult> Objective::Eval(const Eigen::VectorXd& w,
                                           EvalOrder order,
                                           const Eigen::VectorXd* v) const {
  if (w.size() != model_->dim()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "weight has dimension %d, model expects %d", w.size(), model_->dim()));
  }
  if (batch_.size() < 1) return absl::InvalidArgumentError("empty selection");
  EvalResult out;
  switch (order) {
    case EvalOrder::kValue:
      out.value = Value(w);
      break;
    case EvalOrder::kGradient:
      out.vector = Gradient(w);
      break;
    case EvalOrder::kHessian: {
      DP2S_ASSIGN_OR_RETURN(out.matrix, Hessian(w));
      break;
    }
    case EvalOrder::kHvp:
      if (v == nullptr || v->size() != w.size()) {
        return absl::InvalidArgumentError("hvp needs a direction of matching size");
      }
      out.vector = Hvp(w, *v);
      break;
  }
  return out;
}

absl::StatusOr<Sensitivities> ComputeSensitivities(const LossBounds& bounds,
                                                   int m, int d) {
  if (m < 1 || d < 1) {
    return absl::InvalidArgumentError("evaluation-set size and dimension must be >= 1");
  }
  if (!bounds.value.has_value()) {
    return absl::FailedPreconditionError(
        "loss value bound B is missing; supply a weight box");
  }
  const double md = static_cast<double>(m);
  return Sensitivities{*bounds.value / md, 2.0 * bounds.gradient / md,
                       2.0 * bounds.hessian * std::sqrt(static_cast<double>(d)) / md};
}

BatchSizeBound MinBatchSizeBound(const LossBounds& bounds,
                                 const AlgorithmConstants& k, int64_t T,
                                 double eta, int d) {
  const double log_term = std::log(2.0 * d * static_cast<double>(T) / eta);
  const double M = bounds.hessian_lipschitz;
  const double eps_h2 = k.eps_h * k.eps_h;
  const double gradient_branch =
      64.0 * bounds.gradient * bounds.gradient * (log_term + 0.25) *
      std::max(1.0 / (k.c1 * k.c1 * k.eps_g * k.eps_g),
               M * M / (k.c2 * k.c2) / (eps_h2 * eps_h2));
  const double hessian_branch = 32.0 * bounds.hessian * bounds.hessian *
                                log_term / (k.c * k.c) / eps_h2;
  const double value = std::max(gradient_branch, hessian_branch);
  const double ceiling = std::ceil(value);
  if (!(ceiling < 9.0e18)) return {value, std::numeric_limits<int64_t>::max()};
  return {value, static_cast<int64_t>(ceiling)};
}

int64_t MinBatchSize(const LossBounds& bounds, const AlgorithmConstants& k,
                     int64_t T, double eta, int d) {
  return MinBatchSizeBound(bounds, k, T, eta, d).ceiling;
}

}  // namespace dp2s
