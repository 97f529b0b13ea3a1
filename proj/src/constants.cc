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

#include "dp2s/constants.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "dp2s/status_macros.h"

namespace dp2s {
namespace {

bool InOpenUnit(double x) { return x > 0.0 && x < 1.0; }

// Floor that tolerates round-off just below an integer.
double GuardedFloor(double x) { return std::floor(x + 1e-12 * std::max(1.0, std::abs(x))); }

}  // namespace

absl::Status ValidateShortStepConstants(const AlgorithmConstants& k) {
  if (!(k.eps_g > 0.0 && k.eps_h > 0.0)) {
    return absl::InvalidArgumentError("tolerances must be positive");
  }
  if (!(k.c1 >= 0.0 && k.c1 < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("c1 must lie in [0, 1/2), got %g", k.c1));
  }
  if (!(k.c >= 0.0 && k.c2 >= 0.0 && k.c2 + k.c < 1.0 / 3.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("need c, c2 >= 0 and c2 + c < 1/3, got %g", k.c2 + k.c));
  }
  if (!InOpenUnit(k.c_f)) return absl::InvalidArgumentError("c_f must lie in (0, 1)");
  for (double p : {k.zeta, k.xi, k.eta, k.delta_l}) {
    if (!InOpenUnit(p)) {
      return absl::InvalidArgumentError("failure probabilities must lie in (0, 1)");
    }
  }
  return absl::OkStatus();
}

absl::Status ValidateLineSearchConstants(const AlgorithmConstants& k) {
  DP2S_RETURN_IF_ERROR(ValidateShortStepConstants(k));
  if (!(k.c_g > 0.0 && k.c_g < 1.0 - k.c1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("c_g must lie in (0, 1 - c1), got %g", k.c_g));
  }
  const double c_h_max = 1.0 - k.c - std::sqrt(8.0 * k.c2 / 3.0);
  if (!(k.c_h > 0.0 && k.c_h < c_h_max)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "c_h must lie in (0, %g), got %g", c_h_max, k.c_h));
  }
  if (!(k.b_g > 1.0 && k.b_h > 1.0)) {
    return absl::InvalidArgumentError("b_g and b_h must exceed 1");
  }
  if (!InOpenUnit(k.beta_g) || !InOpenUnit(k.beta_h)) {
    return absl::InvalidArgumentError("beta_g and beta_h must lie in (0, 1)");
  }
  DP2S_ASSIGN_OR_RETURN(auto roots, RootsT1T2(k.c, k.c2, k.c_h));
  if (!(k.beta_h > roots.first / roots.second)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "beta_h must exceed t1/t2 = %g, got %g", roots.first / roots.second,
        k.beta_h));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::pair<double, double>> RootsT1T2(double c, double c2,
                                                    double c_h) {
  const double a = 1.0 - c - c_h;
  const double disc = 0.25 * a * a - 2.0 * c2 / 3.0;
  if (disc < 0.0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "negative discriminant %g; c_h is outside its admissible range", disc));
  }
  const double root = 3.0 * std::sqrt(disc);
  return std::make_pair(1.5 * a - root, 1.5 * a + root);
}

absl::StatusOr<double> MinDecShort(double G, double M, double eps_g,
                                   double eps_h, double c1, double c2,
                                   double c) {
  if (!(G > 0.0 && M > 0.0)) {
    return absl::InvalidArgumentError("G and M must be positive");
  }
  if (!(c1 >= 0.0 && c1 < 0.5) || !(c2 + c < 1.0 / 3.0) || c < 0.0 || c2 < 0.0) {
    return absl::InvalidArgumentError("need c1 < 1/2 and c2 + c < 1/3");
  }
  const double gradient_branch = (1.0 - 2.0 * c1) / (2.0 * G) * eps_g * eps_g;
  const double curvature_branch =
      2.0 * (1.0 / 3.0 - c2 - c) * eps_h * eps_h * eps_h / (M * M);
  return std::min(gradient_branch, curvature_branch);
}

absl::StatusOr<double> MinDecLineSearch(double G, double M, double eps_g,
                                        double eps_h, double c1, double c_g,
                                        double c_h, double t2) {
  if (!(G > 0.0 && M > 0.0)) {
    return absl::InvalidArgumentError("G and M must be positive");
  }
  if (!(c_g > 0.0 && c_g < 1.0 - c1) || !(c_h > 0.0) || !(t2 > 0.0)) {
    return absl::InvalidArgumentError("invalid line-search constants");
  }
  const double gradient_branch = (1.0 / G) * (1.0 - c1 - c_g) * c_g * eps_g * eps_g;
  const double curvature_branch =
      0.25 * c_h * t2 * t2 * eps_h * eps_h * eps_h / (M * M);
  return std::min(gradient_branch, curvature_branch);
}

absl::StatusOr<int64_t> IterationBudget(double f0, double z, double f_lower,
                                        double min_dec) {
  if (!(min_dec > 0.0)) {
    return absl::InvalidArgumentError("min_dec must be positive");
  }
  const double steps = std::ceil((f0 + std::abs(z) - f_lower) / min_dec);
  if (!std::isfinite(steps) ||
      steps > static_cast<double>(std::numeric_limits<int64_t>::max() / 2)) {
    return absl::OutOfRangeError(
        absl::StrFormat("iteration budget %g is not representable", steps));
  }
  return std::max<int64_t>(1, static_cast<int64_t>(steps));
}

int LineSearchMaxProbes(double gamma_init, double gamma_bar, double beta) {
  const double ratio = std::log(gamma_init / gamma_bar) / std::log(1.0 / beta);
  return static_cast<int>(GuardedFloor(ratio)) + 1;
}

}  // namespace dp2s
