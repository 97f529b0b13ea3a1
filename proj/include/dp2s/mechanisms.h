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

#ifndef DP2S_MECHANISMS_H_
#define DP2S_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <random>

#include "Eigen/Dense"

namespace dp2s {

// Deterministic random stream keyed by (seed, stream). The engine is
// mt19937_64 seeded through std::seed_seq, both of which are fully specified
// by the standard, so a given (seed, stream) yields the same sequence on every
// conforming implementation.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed, uint64_t stream = 0);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1) with 53 bits of resolution.
  double Uniform();

  // Uniform integer in [0, bound). Unbiased.
  uint64_t UniformInt(uint64_t bound);

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double Normal();

  // Returns an independent child stream and advances this stream by one draw.
  SeededRng Fork();

 private:
  uint64_t seed_;
  uint64_t stream_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// d i.i.d. N(0, scale^2) draws. Always consumes d normals, even for scale 0.
Eigen::VectorXd GaussianVector(int d, double scale, SeededRng& rng);

// Symmetric Gaussian (Wigner) perturbation.
struct SymmetricNoise {
  int dim() const { return static_cast<int>(entries.rows()); }
  Eigen::MatrixXd entries;
};

// Upper triangle including the diagonal is filled in row-major order with
// i.i.d. N(0, scale^2) draws and mirrored to the lower triangle.
SymmetricNoise WignerMatrix(int d, double scale, SeededRng& rng);

// Applies a Wigner matrix without storing it. The entries are regenerated
// from a snapshot of the stream on every product, in the same order as
// WignerMatrix, so AddApply matches WignerMatrix(d, scale, rng).entries * v
// up to summation order for an identical starting stream.
class WignerOperator {
 public:
  WignerOperator(int d, double scale, const SeededRng& snapshot)
      : d_(d), scale_(scale), snapshot_(snapshot) {}

  int dim() const { return d_; }

  // out += E * v.
  void AddApply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const;

 private:
  int d_;
  double scale_;
  SeededRng snapshot_;
};

// One Laplace(scale) draw by inverse CDF.
double Laplace(double scale, SeededRng& rng);

// Tail constant C in ||E||_2 <= C * sqrt(d) * scale for Wigner noise.
inline constexpr double kDefaultWignerConstant = 2.0;

}  // namespace dp2s

#endif  // DP2S_MECHANISMS_H_
