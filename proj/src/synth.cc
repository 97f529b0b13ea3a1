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

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "dp2s/harness.h"
#include "dp2s/mechanisms.h"

namespace dp2s {
namespace {

constexpr double kLabelNoise = 0.1;

// Haar-distributed orthogonal matrix.
Eigen::MatrixXd RandomRotation(int d, SeededRng& rng) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = rng.Normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

absl::StatusOr<Dataset> LogisticSeparable(int n, int d, uint64_t seed) {
  SeededRng rng(seed, 1);
  Eigen::VectorXd direction = GaussianVector(d, 1.0, rng);
  direction.normalize();
  RowMatrix x(n, d);
  Eigen::VectorXd y(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd row = GaussianVector(d, scale, rng);
    const double norm = row.norm();
    if (norm > 1.0) row /= norm;
    x.row(i) = row.transpose();
    double label = row.dot(direction) >= 0.0 ? 1.0 : -1.0;
    if (rng.Uniform() < kLabelNoise) label = -label;
    y(i) = label;
  }
  const double bound = std::max(1.0, x.rowwise().norm().maxCoeff());
  return Dataset::Create(std::move(x), std::move(y), bound);
}

}  // namespace

absl::StatusOr<SynthKind> ParseSynthKind(absl::string_view name) {
  if (name == "planted_saddle") return SynthKind::kPlantedSaddle;
  if (name == "logistic_separable") return SynthKind::kLogisticSeparable;
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown synthetic dataset '%s'", name));
}

absl::StatusOr<Dataset> PlantedSaddle(int n, int d, int positive_axes,
                                      uint64_t seed) {
  if (n < 1 || d < 1) return absl::InvalidArgumentError("n and d must be >= 1");
  if (positive_axes < 0 || positive_axes > d) {
    return absl::InvalidArgumentError("positive_axes must lie in [0, d]");
  }
  SeededRng rng(seed, 0);
  const Eigen::MatrixXd q = RandomRotation(d, rng);
  const double radius = std::sqrt(static_cast<double>(d));
  RowMatrix x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const int axis = i % d;
    x.row(i) = radius * q.col(axis).transpose();
    y(i) = axis < positive_axes ? 1.0 : -1.0;
  }
  const double bound = std::max(radius, x.rowwise().norm().maxCoeff());
  return Dataset::Create(std::move(x), std::move(y), bound);
}

absl::StatusOr<Dataset> SynthDataset(SynthKind kind, int n, int d,
                                     uint64_t seed) {
  if (n < 1 || d < 1) return absl::InvalidArgumentError("n and d must be >= 1");
  switch (kind) {
    case SynthKind::kPlantedSaddle:
      return PlantedSaddle(n, d, (d + 1) / 2, seed);
    case SynthKind::kLogisticSeparable:
      return LogisticSeparable(n, d, seed);
  }
  return absl::InternalError("unknown synthetic kind");
}

}  // namespace dp2s
