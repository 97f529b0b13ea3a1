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

#include "dp2s/plan_policy.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "dp2s/status_macros.h"

namespace dp2s {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

absl::StatusOr<double> RdpSigmaF(const PlanPolicy::SubsampledRdp& p) {
  if (p.sigma_f.has_value()) return *p.sigma_f;
  DP2S_ASSIGN_OR_RETURN(ZCdp rho, ApproxDpToZcdp(p.target));
  return std::sqrt(1.0 / (2.0 * p.c_f * rho.rho));
}

absl::Status Exhausted(double left) {
  return absl::ResourceExhaustedError(
      absl::StrFormat("no privacy budget left (remaining %g)", left));
}

}  // namespace

absl::StatusOr<double> PlanPolicy::SigmaF() const {
  return std::visit(
      Overloaded{
          [](const Fixed& p) -> absl::StatusOr<double> { return p.plan.sigma_f; },
          [](const ZcdpShortStep& p) -> absl::StatusOr<double> {
            return std::sqrt(1.0 / (2.0 * p.c_f * p.target.rho));
          },
          [](const ZcdpLineSearch& p) -> absl::StatusOr<double> {
            return std::sqrt(1.0 / (2.0 * p.rho_f));
          },
          [](const SubsampledApproxDp& p) -> absl::StatusOr<double> {
            return std::sqrt(2.0 * std::log(1.25 / p.delta_f)) / p.epsilon_f;
          },
          [](const SubsampledRdp& p) { return RdpSigmaF(p); },
      },
      spec_);
}

absl::StatusOr<NoisePlan> PlanPolicy::Finalize(int64_t T, double s) const {
  return std::visit(
      Overloaded{
          [&](const Fixed& p) -> absl::StatusOr<NoisePlan> {
            NoisePlan plan = p.plan;
            plan.subsample_fraction = s;
            return plan;
          },
          [&](const ZcdpShortStep& p) { return PlanShortStep(p.target, p.c_f, T); },
          [&](const ZcdpLineSearch& p) {
            return PlanLineSearch(p.target, p.rho_f, T);
          },
          [&](const SubsampledApproxDp& p) {
            return PlanSubsampledDp(p.target, p.epsilon_f, p.delta_f, s, T);
          },
          [&](const SubsampledRdp& p) -> absl::StatusOr<NoisePlan> {
            TuningGrid grid = p.grid;
            DP2S_ASSIGN_OR_RETURN(grid.fixed_sigma_f, RdpSigmaF(p));
            return TuneNoisePlan(p.target, s, T, grid);
          },
      },
      spec_);
}

absl::StatusOr<PlanPolicy> PlanPolicy::Scaled(double f) const {
  if (!(f > 0.0 && f <= 1.0)) {
    return absl::InvalidArgumentError("budget fraction must lie in (0, 1]");
  }
  return std::visit(
      Overloaded{
          [&](const Fixed& p) -> absl::StatusOr<PlanPolicy> { return PlanPolicy(p); },
          [&](const ZcdpShortStep& p) -> absl::StatusOr<PlanPolicy> {
            return PlanPolicy(ZcdpShortStep{ZCdp{p.target.rho * f}, p.c_f});
          },
          [&](const ZcdpLineSearch& p) -> absl::StatusOr<PlanPolicy> {
            return PlanPolicy(
                ZcdpLineSearch{ZCdp{p.target.rho * f}, p.rho_f * f});
          },
          [&](const SubsampledApproxDp& p) -> absl::StatusOr<PlanPolicy> {
            return PlanPolicy(SubsampledApproxDp{
                ApproxDp{p.target.epsilon * f, p.target.delta * f},
                p.epsilon_f * f, p.delta_f * f});
          },
          [&](const SubsampledRdp& p) -> absl::StatusOr<PlanPolicy> {
            SubsampledRdp scaled = p;
            scaled.target.epsilon *= f;
            scaled.sigma_f.reset();
            return PlanPolicy(scaled);
          },
      },
      spec_);
}

absl::StatusOr<PlanPolicy> PlanPolicy::Remaining(
    const PrivacySpent& spent) const {
  return std::visit(
      Overloaded{
          [&](const Fixed& p) -> absl::StatusOr<PlanPolicy> { return PlanPolicy(p); },
          [&](const ZcdpShortStep& p) -> absl::StatusOr<PlanPolicy> {
            const ZCdp* used = std::get_if<ZCdp>(&spent);
            if (used == nullptr) return absl::InvalidArgumentError("expected a zCDP ledger");
            const double left = p.target.rho - used->rho;
            if (!(left > 0.0)) return Exhausted(left);
            return PlanPolicy(ZcdpShortStep{ZCdp{left}, p.c_f});
          },
          [&](const ZcdpLineSearch& p) -> absl::StatusOr<PlanPolicy> {
            const ZCdp* used = std::get_if<ZCdp>(&spent);
            if (used == nullptr) return absl::InvalidArgumentError("expected a zCDP ledger");
            const double left = p.target.rho - used->rho;
            if (!(left > 0.0)) return Exhausted(left);
            return PlanPolicy(ZcdpLineSearch{
                ZCdp{left}, p.rho_f * left / p.target.rho});
          },
          [&](const SubsampledApproxDp& p) -> absl::StatusOr<PlanPolicy> {
            const ApproxDp* used = std::get_if<ApproxDp>(&spent);
            if (used == nullptr) {
              return absl::InvalidArgumentError("expected an (epsilon, delta) ledger");
            }
            const double eps = p.target.epsilon - used->epsilon;
            const double delta = p.target.delta - used->delta;
            if (!(eps > 0.0)) return Exhausted(eps);
            if (!(delta > 0.0)) return Exhausted(delta);
            return PlanPolicy(SubsampledApproxDp{
                ApproxDp{eps, delta}, p.epsilon_f * eps / p.target.epsilon,
                p.delta_f * delta / p.target.delta});
          },
          [&](const SubsampledRdp& p) -> absl::StatusOr<PlanPolicy> {
            const RdpCurve* used = std::get_if<RdpCurve>(&spent);
            if (used == nullptr) return absl::InvalidArgumentError("expected an RDP ledger");
            SubsampledRdp rest = p;
            if (rest.grid.spent.has_value()) {
              const RdpCurve parts[] = {*rest.grid.spent, *used};
              DP2S_ASSIGN_OR_RETURN(rest.grid.spent, Compose(parts));
            } else {
              rest.grid.spent = *used;
            }
            // Size the f-release from the zCDP-equivalent budget still free.
            DP2S_ASSIGN_OR_RETURN(ZCdp total, ApproxDpToZcdp(p.target));
            double used_rho = 0.0;
            for (size_t i = 0; i < used->orders.size(); ++i) {
              used_rho = std::max(used_rho, used->epsilons[i] / used->orders[i]);
            }
            const double left = total.rho - used_rho;
            if (!(left > 0.0)) return Exhausted(left);
            rest.sigma_f = std::sqrt(1.0 / (2.0 * p.c_f * left));
            return PlanPolicy(rest);
          },
      },
      spec_);
}

}  // namespace dp2s
