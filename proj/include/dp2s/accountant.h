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

#ifndef DP2S_ACCOUNTANT_H_
#define DP2S_ACCOUNTANT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace dp2s {

struct ZCdp {
  double rho = 0.0;
};

struct RdpCurve {
  std::vector<double> orders;
  std::vector<double> epsilons;
};

struct ApproxDp {
  double epsilon = 0.0;
  double delta = 0.0;
};

using PrivacySpent = std::variant<ZCdp, RdpCurve, ApproxDp>;

// Budget split used by the subsampled (epsilon, delta) plan.
struct ApproxDpSplit {
  ApproxDp target;
  double epsilon_f = 0.0;
  double delta_f = 0.0;
  double epsilon_0 = 0.0;
  double delta_0 = 0.0;
};

// Noise multipliers. The actual standard deviation of each release is the
// multiplier times the matching sensitivity.
struct NoisePlan {
  double sigma_f = 0.0;
  double sigma_g = 0.0;
  double sigma_h = 0.0;
  std::optional<double> lambda_svt;
  double subsample_fraction = 1.0;
  std::optional<ApproxDpSplit> approx_dp_split;
  std::vector<std::string> warnings;
};

enum class AccountingMode {
  kShortStep,
  kLineSearch,
  kMinibatchRdp,
  kMinibatchApproxDp,
};

// Release counts of one run. Every iteration releases a noisy gradient;
// hessian_draws counts iterations that also released a noisy Hessian
// (curvature steps and the terminal check); line_searches counts SVT calls.
struct RunCounts {
  int64_t gradient_steps = 0;
  int64_t hessian_draws = 0;
  int64_t line_searches = 0;

  static RunCounts FromSteps(int64_t k_g, int64_t k_h) {
    return RunCounts{k_g, k_h, k_g + k_h};
  }
  int64_t iterations() const { return gradient_steps + hessian_draws; }
};

absl::StatusOr<ZCdp> GaussianMechanismZcdp(double sigma);
absl::StatusOr<ZCdp> SvtZcdp(double lambda);
absl::StatusOr<ZCdp> PureDpToZcdp(double epsilon);

absl::StatusOr<ZCdp> Compose(std::span<const ZCdp> budgets);
absl::StatusOr<RdpCurve> Compose(std::span<const RdpCurve> curves);

absl::StatusOr<ApproxDp> ZcdpToApproxDp(ZCdp budget, double delta);
absl::StatusOr<ZCdp> ApproxDpToZcdp(ApproxDp target);

struct RdpConversion {
  ApproxDp dp;
  double order = 0.0;
};
absl::StatusOr<RdpConversion> RdpToApproxDp(const RdpCurve& curve,
                                            double delta);

// Integer orders {2, ..., 64} and {128, 256}.
std::vector<double> DefaultRdpOrders();

// rho-zCDP as an RDP curve, epsilon(alpha) = rho * alpha.
RdpCurve ZcdpToRdp(ZCdp budget, std::span<const double> orders);

// Upper bound on the RDP of the Gaussian mechanism with multiplier `sigma`
// applied to a subsample drawn without replacement at fraction `s`: the
// binomial-sum amplification bound, capped by the unsubsampled alpha/(2 sigma^2).
absl::StatusOr<double> SubsampledGaussianRdp(int alpha, double sigma,
                                             double s);
absl::StatusOr<RdpCurve> SubsampledGaussianRdpCurve(
    double sigma, double s, std::span<const double> orders);

// Multiplier of a joint gradient+Hessian release: 1/sigma^2 = 1/sg^2 + 1/sh^2.
double CombinedSigma(double sigma_g, double sigma_h);

absl::StatusOr<NoisePlan> PlanShortStep(ZCdp budget, double c_f, int64_t T);
absl::StatusOr<NoisePlan> PlanLineSearch(ZCdp budget, double rho_f,
                                         int64_t T);
absl::StatusOr<NoisePlan> PlanSubsampledDp(ApproxDp target, double epsilon_f,
                                           double delta_f, double s,
                                           int64_t T);

struct TuningGrid {
  double sigma_min = 0.5;
  double sigma_max = 1e4;
  int points = 241;
  std::vector<double> orders = DefaultRdpOrders();
  std::optional<double> fixed_sigma_f;
  // Curve already spent by an earlier phase; added before conversion.
  std::optional<RdpCurve> spent;
};

absl::StatusOr<NoisePlan> TuneNoisePlan(ApproxDp target, double s, int64_t T,
                                        const TuningGrid& grid);

// Worst-case curve of a T-iteration minibatch run:
// alpha/(2 sigma_f^2) + T eps'(sigma_g) + T eps'(sigma_gh).
absl::StatusOr<RdpCurve> MinibatchPlannedCurve(
    const NoisePlan& plan, int64_t T, std::span<const double> orders);

absl::StatusOr<ZCdp> AccountZcdpRun(const RunCounts& counts,
                                    const NoisePlan& plan,
                                    AccountingMode mode);
absl::StatusOr<RdpCurve> AccountRdpRun(const RunCounts& counts,
                                       const NoisePlan& plan,
                                       std::span<const double> orders);
absl::StatusOr<ApproxDp> AccountApproxDpRun(const RunCounts& counts,
                                            const NoisePlan& plan);

absl::StatusOr<PrivacySpent> AccountRun(
    const RunCounts& counts, const NoisePlan& plan, AccountingMode mode,
    std::span<const double> orders = {});

// Sum of two ledgers of the same kind. Approximate-DP pairs compose by basic
// composition.
absl::StatusOr<PrivacySpent> ComposeSpent(const PrivacySpent& a,
                                          const PrivacySpent& b);

// epsilon of the (epsilon, delta)-DP guarantee implied by a ledger.
absl::StatusOr<double> SpentEpsilon(const PrivacySpent& spent, double delta);

}  // namespace dp2s

#endif  // DP2S_ACCOUNTANT_H_
