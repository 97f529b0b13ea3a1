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

#ifndef DP2S_PLAN_POLICY_H_
#define DP2S_PLAN_POLICY_H_

#include <cstdint>
#include <optional>
#include <variant>

#include "absl/status/statusor.h"
#include "dp2s/accountant.h"

namespace dp2s {

// How a run turns its privacy target into a noise plan. sigma_f is known up
// front; the remaining multipliers are fixed once the run has drawn its
// noisy f(w0) and computed T.
class PlanPolicy {
 public:
  struct Fixed {
    NoisePlan plan;
  };
  struct ZcdpShortStep {
    ZCdp target;
    double c_f;
  };
  struct ZcdpLineSearch {
    ZCdp target;
    double rho_f;
  };
  struct SubsampledApproxDp {
    ApproxDp target;
    double epsilon_f;
    double delta_f;
  };
  struct SubsampledRdp {
    ApproxDp target;
    double c_f;
    TuningGrid grid;
    // Overrides the c_f share of the converted target when set.
    std::optional<double> sigma_f;
  };
  using Spec = std::variant<Fixed, ZcdpShortStep, ZcdpLineSearch,
                            SubsampledApproxDp, SubsampledRdp>;

  explicit PlanPolicy(Spec spec) : spec_(std::move(spec)) {}

  const Spec& spec() const { return spec_; }

  absl::StatusOr<double> SigmaF() const;
  // Plan for a run of T iterations at sampling fraction s.
  absl::StatusOr<NoisePlan> Finalize(int64_t T, double s) const;

  // The same policy with its budget scaled by `fraction` in (0, 1].
  absl::StatusOr<PlanPolicy> Scaled(double fraction) const;
  // The policy for what is left after `spent` has been used.
  absl::StatusOr<PlanPolicy> Remaining(const PrivacySpent& spent) const;

 private:
  Spec spec_;
};

}  // namespace dp2s

#endif  // DP2S_PLAN_POLICY_H_
