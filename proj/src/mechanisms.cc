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

#include "dp2s/mechanisms.h"

#include <cmath>
#include <numbers>

namespace dp2s {
namespace {

std::mt19937_64 MakeEngine(uint64_t seed, uint64_t stream) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream),
                    static_cast<uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

SeededRng::SeededRng(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream), engine_(MakeEngine(seed, stream)) {}

double SeededRng::Uniform() {
  const uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

uint64_t SeededRng::UniformInt(uint64_t bound) {
  // Rejection on the top of the range keeps every residue equally likely.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double SeededRng::Normal() {
  if (spare_normal_.has_value()) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  return r * std::cos(theta);
}

SeededRng SeededRng::Fork() { return SeededRng(engine_(), stream_); }

Eigen::VectorXd GaussianVector(int d, double scale, SeededRng& rng) {
  Eigen::VectorXd out(d);
  for (int i = 0; i < d; ++i) out[i] = scale * rng.Normal();
  return out;
}

SymmetricNoise WignerMatrix(int d, double scale, SeededRng& rng) {
  SymmetricNoise noise{Eigen::MatrixXd::Zero(d, d)};
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double e = scale * rng.Normal();
      noise.entries(i, j) = e;
      noise.entries(j, i) = e;
    }
  }
  return noise;
}

void WignerOperator::AddApply(const Eigen::VectorXd& v,
                              Eigen::VectorXd& out) const {
  SeededRng rng = snapshot_;
  for (int i = 0; i < d_; ++i) {
    for (int j = i; j < d_; ++j) {
      const double e = scale_ * rng.Normal();
      out[i] += e * v[j];
      if (j != i) out[j] += e * v[i];
    }
  }
}

double Laplace(double scale, SeededRng& rng) {
  const double u = rng.Uniform() - 0.5;
  const double magnitude = -scale * std::log(1.0 - 2.0 * std::abs(u));
  return u < 0 ? -magnitude : magnitude;
}

}  // namespace dp2s
