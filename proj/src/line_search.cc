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

#include "dp2s/line_search.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "dp2s/constants.h"

namespace dp2s {

absl::StatusOr<LineSearchResult> DpLineSearch(
    const std::function<double(double)>& query, double delta_q,
    double gamma_init, double gamma_bar, double beta, double lambda,
    SeededRng& rng, SvtNoise* noise) {
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1)");
  }
  if (!(gamma_bar > 0.0 && gamma_bar <= gamma_init)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "need 0 < gamma_bar <= gamma_init, got %g and %g", gamma_bar,
        gamma_init));
  }
  if (!(lambda > 0.0)) return absl::InvalidArgumentError("lambda must be positive");
  if (!(delta_q >= 0.0)) {
    return absl::InvalidArgumentError("query sensitivity must be >= 0");
  }
  LaplaceSvtNoise laplace;
  SvtNoise& source = noise != nullptr ? *noise : laplace;

  LineSearchResult result;
  result.max_probes = LineSearchMaxProbes(gamma_init, gamma_bar, beta);
  const double threshold = source.Threshold(2.0 * lambda * delta_q, rng);
  for (int i = 0; i < result.max_probes; ++i) {
    const double gamma = gamma_init * std::pow(beta, i);
    ++result.probes;
    const double answer = query(gamma) + source.Probe(4.0 * lambda * delta_q, rng);
    if (answer >= threshold) {
      result.step = gamma;
      return result;
    }
  }
  result.step = gamma_bar;
  result.fallback = true;
  return result;
}

}  // namespace dp2s
