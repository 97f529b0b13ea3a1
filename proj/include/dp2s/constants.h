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

#ifndef DP2S_CONSTANTS_H_
#define DP2S_CONSTANTS_H_

#include <cstdint>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dp2s {

// Tolerances and analysis constants shared by every algorithm variant.
struct AlgorithmConstants {
  double eps_g = 0.06;
  double eps_h = 0.245;
  double c = 0.1;
  double c1 = 0.1;
  double c2 = 0.1;
  double c_g = 0.45;
  double c_h = 0.2;
  double b_g = 2.0;
  double b_h = 2.0;
  double beta_g = 0.5;
  double beta_h = 0.5;
  double c_f = 0.1;
  double zeta = 0.1;
  double xi = 0.1;
  double eta = 0.1;
  double delta_l = 0.05;
};

// Named tolerance presets.
struct TolerancePreset {
  double eps_g;
  double eps_h;
};
inline constexpr TolerancePreset kCovertypeLoose{0.060, 0.245};
inline constexpr TolerancePreset kCovertypeTight{0.030, 0.173};
inline constexpr TolerancePreset kIjcnnLoose{0.040, 0.200};
inline constexpr TolerancePreset kIjcnnTight{0.020, 0.141};

// Checks the ranges needed by the short-step analysis.
absl::Status ValidateShortStepConstants(const AlgorithmConstants& k);
// Additionally checks the line-search ranges, including beta_h > t1/t2.
absl::Status ValidateLineSearchConstants(const AlgorithmConstants& k);

struct DerivedConstants {
  double t1 = 0.0;
  double t2 = 0.0;
  double min_dec = 0.0;
  int64_t T = 1;
  double gamma_bar_g = 0.0;
};

// Roots of -t^2/6 + (1 - c - c_h) t / 2 - c2 = 0, smaller first.
absl::StatusOr<std::pair<double, double>> RootsT1T2(double c, double c2,
                                                    double c_h);

absl::StatusOr<double> MinDecShort(double G, double M, double eps_g,
                                   double eps_h, double c1, double c2,
                                   double c);

absl::StatusOr<double> MinDecLineSearch(double G, double M, double eps_g,
                                        double eps_h, double c1, double c_g,
                                        double c_h, double t2);

// ceil((f0 + |z| - f_lower) / min_dec), clamped below at 1.
absl::StatusOr<int64_t> IterationBudget(double f0, double z, double f_lower,
                                        double min_dec);

// Number of SVT probes floor(ln(gamma_init/gamma_bar) / ln(1/beta)) + 1.
int LineSearchMaxProbes(double gamma_init, double gamma_bar, double beta);

}  // namespace dp2s

#endif  // DP2S_CONSTANTS_H_
