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

#ifndef DP2S_LINE_SEARCH_H_
#define DP2S_LINE_SEARCH_H_

#include <functional>

#include "absl/status/statusor.h"
#include "dp2s/mechanisms.h"

namespace dp2s {

// Source of the threshold and per-probe perturbations of the sparse vector
// technique. Tests substitute deterministic sources.
class SvtNoise {
 public:
  virtual ~SvtNoise() = default;
  virtual double Threshold(double scale, SeededRng& rng) = 0;
  virtual double Probe(double scale, SeededRng& rng) = 0;
};

class LaplaceSvtNoise final : public SvtNoise {
 public:
  double Threshold(double scale, SeededRng& rng) override {
    return Laplace(scale, rng);
  }
  double Probe(double scale, SeededRng& rng) override {
    return Laplace(scale, rng);
  }
};

class ZeroSvtNoise final : public SvtNoise {
 public:
  double Threshold(double, SeededRng&) override { return 0.0; }
  double Probe(double, SeededRng&) override { return 0.0; }
};

struct LineSearchResult {
  double step = 0.0;
  int probes = 0;       // queries evaluated
  int max_probes = 0;   // i_max
  bool fallback = false;
};

// Backtracking over gamma_init * beta^i, i < i_max, halting at the first
// probe whose perturbed query clears a perturbed zero threshold; returns
// gamma_bar when no probe does. Threshold noise has scale 2 lambda delta_q
// and probe noise 4 lambda delta_q.
absl::StatusOr<LineSearchResult> DpLineSearch(
    const std::function<double(double)>& query, double delta_q,
    double gamma_init, double gamma_bar, double beta, double lambda,
    SeededRng& rng, SvtNoise* noise = nullptr);

}  // namespace dp2s

#endif  // DP2S_LINE_SEARCH_H_
