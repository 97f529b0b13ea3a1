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

#include "dp2s/accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "dp2s/status_macros.h"

namespace dp2s {
namespace {

constexpr double kLargeSigma = 1e6;

absl::Status CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  return absl::OkStatus();
}

absl::Status CheckPositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must be positive and finite, got %g", name, value));
  }
  return absl::OkStatus();
}

absl::Status CheckIterations(int64_t T) {
  if (T < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("iteration budget must be >= 1, got %d", T));
  }
  return absl::OkStatus();
}

double LogBinomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

void WarnIfLarge(NoisePlan& plan) {
  const std::pair<const char*, double> sigmas[] = {
      {"sigma_f", plan.sigma_f},
      {"sigma_g", plan.sigma_g},
      {"sigma_h", plan.sigma_h},
      {"lambda_svt", plan.lambda_svt.value_or(0.0)}};
  for (const auto& [name, value] : sigmas) {
    if (value > kLargeSigma) {
      plan.warnings.push_back(absl::StrFormat(
          "%s = %g exceeds %g; the run will be dominated by noise", name,
          value, kLargeSigma));
    }
  }
}

absl::StatusOr<std::vector<double>> CurveEpsilons(
    double sigma, double s, std::span<const double> orders) {
  std::vector<double> out;
  out.reserve(orders.size());
  for (double alpha : orders) {
    DP2S_ASSIGN_OR_RETURN(double eps, SubsampledGaussianRdp(
                                          static_cast<int>(alpha), sigma, s));
    out.push_back(eps);
  }
  return out;
}

absl::Status CheckIntegerOrders(std::span<const double> orders) {
  if (orders.empty()) return absl::InvalidArgumentError("empty order grid");
  for (double alpha : orders) {
    if (alpha < 2.0 || alpha != std::floor(alpha)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "subsampled RDP needs integer orders >= 2, got %g", alpha));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ZCdp> GaussianMechanismZcdp(double sigma) {
  DP2S_RETURN_IF_ERROR(CheckPositive(sigma, "sigma"));
  return ZCdp{1.0 / (2.0 * sigma * sigma)};
}

absl::StatusOr<ZCdp> SvtZcdp(double lambda) {
  DP2S_RETURN_IF_ERROR(CheckPositive(lambda, "lambda"));
  return ZCdp{1.0 / (2.0 * lambda * lambda)};
}

absl::StatusOr<ZCdp> PureDpToZcdp(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be finite and >= 0");
  }
  return ZCdp{epsilon * epsilon / 2.0};
}

absl::StatusOr<ZCdp> Compose(std::span<const ZCdp> budgets) {
  if (budgets.empty()) return absl::InvalidArgumentError("nothing to compose");
  ZCdp total;
  for (const ZCdp& b : budgets) {
    if (b.rho < 0.0) return absl::InvalidArgumentError("negative rho");
    total.rho += b.rho;
  }
  return total;
}

absl::StatusOr<RdpCurve> Compose(std::span<const RdpCurve> curves) {
  if (curves.empty()) return absl::InvalidArgumentError("nothing to compose");
  RdpCurve total = curves.front();
  if (total.orders.size() != total.epsilons.size()) {
    return absl::InvalidArgumentError("curve orders/epsilons length mismatch");
  }
  for (size_t c = 1; c < curves.size(); ++c) {
    if (curves[c].orders != total.orders ||
        curves[c].epsilons.size() != total.epsilons.size()) {
      return absl::InvalidArgumentError("RDP curves use different order grids");
    }
    for (size_t i = 0; i < total.epsilons.size(); ++i) {
      total.epsilons[i] += curves[c].epsilons[i];
    }
  }
  return total;
}

absl::StatusOr<ApproxDp> ZcdpToApproxDp(ZCdp budget, double delta) {
  DP2S_RETURN_IF_ERROR(CheckDelta(delta));
  if (budget.rho < 0.0) return absl::InvalidArgumentError("negative rho");
  const double eps =
      budget.rho + std::sqrt(4.0 * budget.rho * std::log(1.0 / delta));
  return ApproxDp{eps, delta};
}

absl::StatusOr<ZCdp> ApproxDpToZcdp(ApproxDp target) {
  DP2S_RETURN_IF_ERROR(CheckDelta(target.delta));
  DP2S_RETURN_IF_ERROR(CheckPositive(target.epsilon, "epsilon"));
  const double l = std::log(1.0 / target.delta);
  const double root = std::sqrt(target.epsilon + l) - std::sqrt(l);
  return ZCdp{root * root};
}

absl::StatusOr<RdpConversion> RdpToApproxDp(const RdpCurve& curve,
                                            double delta) {
  DP2S_RETURN_IF_ERROR(CheckDelta(delta));
  if (curve.orders.empty() || curve.orders.size() != curve.epsilons.size()) {
    return absl::InvalidArgumentError("empty or malformed RDP curve");
  }
  const double log_inv_delta = std::log(1.0 / delta);
  RdpConversion best{{std::numeric_limits<double>::infinity(), delta}, 0.0};
  for (size_t i = 0; i < curve.orders.size(); ++i) {
    const double alpha = curve.orders[i];
    if (!(alpha > 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("RDP order must exceed 1, got %g", alpha));
    }
    const double eps = curve.epsilons[i] + log_inv_delta / (alpha - 1.0);
    if (eps < best.dp.epsilon) best = {{eps, delta}, alpha};
  }
  return best;
}

std::vector<double> DefaultRdpOrders() {
  std::vector<double> orders;
  for (int a = 2; a <= 64; ++a) orders.push_back(a);
  orders.push_back(128);
  orders.push_back(256);
  return orders;
}

RdpCurve ZcdpToRdp(ZCdp budget, std::span<const double> orders) {
  RdpCurve curve;
  curve.orders.assign(orders.begin(), orders.end());
  for (double alpha : orders) curve.epsilons.push_back(budget.rho * alpha);
  return curve;
}

absl::StatusOr<double> SubsampledGaussianRdp(int alpha, double sigma,
                                             double s) {
  if (alpha < 2) {
    return absl::InvalidArgumentError(
        absl::StrFormat("order must be an integer >= 2, got %d", alpha));
  }
  DP2S_RETURN_IF_ERROR(CheckPositive(sigma, "sigma"));
  if (!(s > 0.0 && s <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sampling fraction must lie in (0, 1], got %g", s));
  }
  const double x = 1.0 / (sigma * sigma);
  const double log_s = std::log(s);
  // min(4(e^x - 1), 2e^x): the first branch is smaller exactly when x < ln 2.
  const double log_second =
      x < std::numbers::ln2 ? std::log(4.0 * std::expm1(x))
                            : std::numbers::ln2 + x;

  std::vector<double> log_terms;
  log_terms.reserve(alpha - 1);
  log_terms.push_back(2.0 * log_s + LogBinomial(alpha, 2) + log_second);
  for (int j = 3; j <= alpha; ++j) {
    log_terms.push_back(std::numbers::ln2 + j * log_s + LogBinomial(alpha, j) +
                        0.5 * (j - 1.0) * j * x);
  }
  const double peak = *std::max_element(log_terms.begin(), log_terms.end());
  double log_total;
  if (peak < 0.0) {
    double sum = 0.0;
    for (double t : log_terms) sum += std::exp(t);
    log_total = std::log1p(sum);
  } else {
    double sum = std::exp(-peak);
    for (double t : log_terms) sum += std::exp(t - peak);
    log_total = peak + std::log(sum);
  }
  // Subsampling never weakens the base mechanism, whose RDP is alpha x / 2.
  return std::min(log_total / (alpha - 1.0), 0.5 * alpha * x);
}

absl::StatusOr<RdpCurve> SubsampledGaussianRdpCurve(
    double sigma, double s, std::span<const double> orders) {
  DP2S_RETURN_IF_ERROR(CheckIntegerOrders(orders));
  RdpCurve curve;
  curve.orders.assign(orders.begin(), orders.end());
  DP2S_ASSIGN_OR_RETURN(curve.epsilons, CurveEpsilons(sigma, s, orders));
  return curve;
}

double CombinedSigma(double sigma_g, double sigma_h) {
  return 1.0 / std::sqrt(1.0 / (sigma_g * sigma_g) + 1.0 / (sigma_h * sigma_h));
}

absl::StatusOr<NoisePlan> PlanShortStep(ZCdp budget, double c_f, int64_t T) {
  DP2S_RETURN_IF_ERROR(CheckPositive(budget.rho, "rho"));
  if (!(c_f > 0.0 && c_f < 1.0)) {
    return absl::InvalidArgumentError("c_f must lie in (0, 1)");
  }
  DP2S_RETURN_IF_ERROR(CheckIterations(T));
  NoisePlan plan;
  plan.sigma_f = std::sqrt(1.0 / (2.0 * c_f * budget.rho));
  plan.sigma_g = std::sqrt(static_cast<double>(T) / ((1.0 - c_f) * budget.rho));
  plan.sigma_h = plan.sigma_g;
  WarnIfLarge(plan);
  return plan;
}

absl::StatusOr<NoisePlan> PlanLineSearch(ZCdp budget, double rho_f,
                                         int64_t T) {
  DP2S_RETURN_IF_ERROR(CheckPositive(budget.rho, "rho"));
  if (!(rho_f > 0.0 && rho_f < budget.rho)) {
    return absl::InvalidArgumentError("rho_f must lie in (0, rho)");
  }
  DP2S_RETURN_IF_ERROR(CheckIterations(T));
  NoisePlan plan;
  plan.sigma_f = std::sqrt(1.0 / (2.0 * rho_f));
  plan.sigma_g =
      std::sqrt(3.0 * static_cast<double>(T) / (2.0 * (budget.rho - rho_f)));
  plan.sigma_h = plan.sigma_g;
  plan.lambda_svt = plan.sigma_g;
  WarnIfLarge(plan);
  return plan;
}

absl::StatusOr<NoisePlan> PlanSubsampledDp(ApproxDp target, double epsilon_f,
                                           double delta_f, double s,
                                           int64_t T) {
  DP2S_RETURN_IF_ERROR(CheckDelta(target.delta));
  DP2S_RETURN_IF_ERROR(CheckIterations(T));
  if (!(epsilon_f > 0.0 && epsilon_f < 1.0 && epsilon_f < target.epsilon)) {
    return absl::InvalidArgumentError("epsilon_f must lie in (0, min(1, epsilon))");
  }
  if (!(target.epsilon - epsilon_f < 1.0)) {
    return absl::InvalidArgumentError(
        "epsilon - epsilon_f must be below 1 for advanced composition");
  }
  if (!(delta_f > 0.0 && delta_f < target.delta)) {
    return absl::InvalidArgumentError("delta_f must lie in (0, delta)");
  }
  if (!(s > 0.0 && s <= 1.0)) {
    return absl::InvalidArgumentError("sampling fraction must lie in (0, 1]");
  }
  const double eps_rest = target.epsilon - epsilon_f;
  const double delta_rest = target.delta - delta_f;
  const double t = static_cast<double>(T);
  ApproxDpSplit split;
  split.target = target;
  split.epsilon_f = epsilon_f;
  split.delta_f = delta_f;
  split.epsilon_0 =
      eps_rest / (8.0 * s * std::sqrt(2.0 * t * std::log(2.0 / delta_rest)));
  split.delta_0 = delta_rest / (4.0 * s * t);
  if (split.epsilon_0 >= 1.0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "per-iteration epsilon %g >= 1 breaks the advanced composition "
        "precondition",
        split.epsilon_0));
  }
  if (split.delta_0 >= 1.0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("per-iteration delta %g >= 1", split.delta_0));
  }
  NoisePlan plan;
  plan.sigma_f = std::sqrt(2.0 * std::log(1.25 / delta_f)) / epsilon_f;
  plan.sigma_g =
      std::sqrt(2.0 * std::log(1.25 / split.delta_0)) / split.epsilon_0;
  plan.sigma_h = plan.sigma_g;
  plan.subsample_fraction = s;
  plan.approx_dp_split = split;
  WarnIfLarge(plan);
  return plan;
}

absl::StatusOr<RdpCurve> MinibatchPlannedCurve(
    const NoisePlan& plan, int64_t T, std::span<const double> orders) {
  DP2S_RETURN_IF_ERROR(CheckIterations(T));
  // T iterations that each release a gradient and a Hessian.
  return AccountRdpRun(RunCounts{0, T, 0}, plan, orders);
}

absl::StatusOr<NoisePlan> TuneNoisePlan(ApproxDp target, double s, int64_t T,
                                        const TuningGrid& grid) {
  DP2S_RETURN_IF_ERROR(CheckDelta(target.delta));
  DP2S_RETURN_IF_ERROR(CheckPositive(target.epsilon, "epsilon"));
  DP2S_RETURN_IF_ERROR(CheckIterations(T));
  DP2S_RETURN_IF_ERROR(CheckIntegerOrders(grid.orders));
  if (!(grid.sigma_min > 0.0 && grid.sigma_max > grid.sigma_min) ||
      grid.points < 2) {
    return absl::InvalidArgumentError("degenerate tuning grid");
  }
  if (grid.spent.has_value() && grid.spent->orders != grid.orders) {
    return absl::InvalidArgumentError("spent curve uses a different order grid");
  }
  std::vector<double> sigmas(grid.points);
  const double log_ratio = std::log(grid.sigma_max / grid.sigma_min);
  for (int i = 0; i < grid.points; ++i) {
    sigmas[i] = grid.sigma_min * std::exp(log_ratio * i / (grid.points - 1));
  }

  // The gradient-only curve depends on one coordinate, so it is cached.
  std::vector<std::optional<std::vector<double>>> gradient_cache(grid.points);
  auto gradient_curve =
      [&](int i) -> absl::StatusOr<const std::vector<double>*> {
    if (!gradient_cache[i].has_value()) {
      DP2S_ASSIGN_OR_RETURN(auto eps, CurveEpsilons(sigmas[i], s, grid.orders));
      gradient_cache[i] = std::move(eps);
    }
    return &*gradient_cache[i];
  };

  const double t = static_cast<double>(T);
  auto feasible = [&](int ig, int ih, double sigma_f) -> absl::StatusOr<bool> {
    DP2S_ASSIGN_OR_RETURN(const std::vector<double>* eg, gradient_curve(ig));
    const double sgh = CombinedSigma(sigmas[ig], sigmas[ih]);
    DP2S_ASSIGN_OR_RETURN(auto egh, CurveEpsilons(sgh, s, grid.orders));
    RdpCurve curve;
    curve.orders = grid.orders;
    for (size_t i = 0; i < grid.orders.size(); ++i) {
      double e = grid.orders[i] / (2.0 * sigma_f * sigma_f) + t * (*eg)[i] +
                 t * egh[i];
      if (grid.spent.has_value()) e += grid.spent->epsilons[i];
      curve.epsilons.push_back(e);
    }
    DP2S_ASSIGN_OR_RETURN(RdpConversion dp, RdpToApproxDp(curve, target.delta));
    return dp.dp.epsilon <= target.epsilon;
  };

  int ig = grid.points - 1;
  int ih = grid.points - 1;
  int jf = grid.points - 1;
  auto sigma_f = [&](int j) {
    return grid.fixed_sigma_f.has_value() ? *grid.fixed_sigma_f : sigmas[j];
  };
  DP2S_ASSIGN_OR_RETURN(bool ok, feasible(ig, ih, sigma_f(jf)));
  if (!ok) {
    return absl::NotFoundError(absl::StrFormat(
        "no plan on the grid meets epsilon=%g at delta=%g (T=%d, s=%g)",
        target.epsilon, target.delta, T, s));
  }
  bool moved = true;
  while (moved) {
    moved = false;
    if (ig > 0) {
      DP2S_ASSIGN_OR_RETURN(bool step, feasible(ig - 1, ih, sigma_f(jf)));
      if (step) { --ig; moved = true; }
    }
    if (ih > 0) {
      DP2S_ASSIGN_OR_RETURN(bool step, feasible(ig, ih - 1, sigma_f(jf)));
      if (step) { --ih; moved = true; }
    }
    if (!grid.fixed_sigma_f.has_value() && jf > 0) {
      DP2S_ASSIGN_OR_RETURN(bool step, feasible(ig, ih, sigma_f(jf - 1)));
      if (step) { --jf; moved = true; }
    }
  }
  NoisePlan plan;
  plan.sigma_f = sigma_f(jf);
  plan.sigma_g = sigmas[ig];
  plan.sigma_h = sigmas[ih];
  plan.subsample_fraction = s;
  WarnIfLarge(plan);
  return plan;
}

absl::StatusOr<ZCdp> AccountZcdpRun(const RunCounts& counts,
                                    const NoisePlan& plan,
                                    AccountingMode mode) {
  if (counts.gradient_steps < 0 || counts.hessian_draws < 0 ||
      counts.line_searches < 0) {
    return absl::InvalidArgumentError("negative release counts");
  }
  DP2S_RETURN_IF_ERROR(CheckPositive(plan.sigma_f, "sigma_f"));
  DP2S_RETURN_IF_ERROR(CheckPositive(plan.sigma_g, "sigma_g"));
  DP2S_RETURN_IF_ERROR(CheckPositive(plan.sigma_h, "sigma_h"));
  const double gradients = static_cast<double>(counts.iterations());
  const double hessians = static_cast<double>(counts.hessian_draws);
  double inner = 1.0 / (plan.sigma_f * plan.sigma_f) +
                 gradients / (plan.sigma_g * plan.sigma_g) +
                 hessians / (plan.sigma_h * plan.sigma_h);
  switch (mode) {
    case AccountingMode::kShortStep:
      break;
    case AccountingMode::kLineSearch: {
      if (!plan.lambda_svt.has_value()) {
        return absl::InvalidArgumentError(
            "line-search accounting needs lambda_svt");
      }
      DP2S_RETURN_IF_ERROR(CheckPositive(*plan.lambda_svt, "lambda_svt"));
      const double lambda = *plan.lambda_svt;
      inner += static_cast<double>(counts.line_searches) / (lambda * lambda);
      break;
    }
    default:
      return absl::InvalidArgumentError(
          "minibatch runs are accounted by RDP or approximate DP");
  }
  return ZCdp{0.5 * inner};
}

absl::StatusOr<RdpCurve> AccountRdpRun(const RunCounts& counts,
                                       const NoisePlan& plan,
                                       std::span<const double> orders) {
  if (counts.gradient_steps < 0 || counts.hessian_draws < 0) {
    return absl::InvalidArgumentError("negative release counts");
  }
  DP2S_RETURN_IF_ERROR(CheckIntegerOrders(orders));
  DP2S_RETURN_IF_ERROR(CheckPositive(plan.sigma_f, "sigma_f"));
  DP2S_RETURN_IF_ERROR(CheckPositive(plan.sigma_g, "sigma_g"));
  DP2S_RETURN_IF_ERROR(CheckPositive(plan.sigma_h, "sigma_h"));
  const double s = plan.subsample_fraction;
  const double sgh = CombinedSigma(plan.sigma_g, plan.sigma_h);
  DP2S_ASSIGN_OR_RETURN(auto eg, CurveEpsilons(plan.sigma_g, s, orders));
  DP2S_ASSIGN_OR_RETURN(auto egh, CurveEpsilons(sgh, s, orders));
  const double gradients = static_cast<double>(counts.iterations());
  const double hessians = static_cast<double>(counts.hessian_draws);
  RdpCurve curve;
  curve.orders.assign(orders.begin(), orders.end());
  for (size_t i = 0; i < orders.size(); ++i) {
    curve.epsilons.push_back(orders[i] / (2.0 * plan.sigma_f * plan.sigma_f) +
                             gradients * eg[i] + hessians * egh[i]);
  }
  return curve;
}

absl::StatusOr<ApproxDp> AccountApproxDpRun(const RunCounts& counts,
                                            const NoisePlan& plan) {
  if (!plan.approx_dp_split.has_value()) {
    return absl::InvalidArgumentError(
        "approximate-DP accounting needs a subsampled (epsilon, delta) plan");
  }
  const ApproxDpSplit& split = *plan.approx_dp_split;
  const double s = plan.subsample_fraction;
  const double k = static_cast<double>(counts.iterations());
  const double eps_it = 4.0 * s * split.epsilon_0;
  const double delta_it = 2.0 * s * split.delta_0;
  const double slack = (split.target.delta - split.delta_f) / 2.0;
  const double basic = k * eps_it;
  const double advanced = std::sqrt(2.0 * k * std::log(1.0 / slack)) * eps_it +
                          k * eps_it * std::expm1(eps_it);
  ApproxDp spent{split.epsilon_f, split.delta_f + k * delta_it};
  if (advanced < basic) {
    spent.epsilon += advanced;
    spent.delta += slack;
  } else {
    spent.epsilon += basic;
  }
  return spent;
}

absl::StatusOr<PrivacySpent> AccountRun(const RunCounts& counts,
                                        const NoisePlan& plan,
                                        AccountingMode mode,
                                        std::span<const double> orders) {
  switch (mode) {
    case AccountingMode::kShortStep:
    case AccountingMode::kLineSearch: {
      DP2S_ASSIGN_OR_RETURN(ZCdp rho, AccountZcdpRun(counts, plan, mode));
      return PrivacySpent(rho);
    }
    case AccountingMode::kMinibatchRdp: {
      const std::vector<double> defaults = DefaultRdpOrders();
      DP2S_ASSIGN_OR_RETURN(
          RdpCurve curve,
          AccountRdpRun(counts, plan,
                        orders.empty() ? std::span<const double>(defaults)
                                       : orders));
      return PrivacySpent(std::move(curve));
    }
    case AccountingMode::kMinibatchApproxDp: {
      DP2S_ASSIGN_OR_RETURN(ApproxDp dp, AccountApproxDpRun(counts, plan));
      return PrivacySpent(dp);
    }
  }
  return absl::InvalidArgumentError("unknown accounting mode");
}

absl::StatusOr<PrivacySpent> ComposeSpent(const PrivacySpent& a,
                                          const PrivacySpent& b) {
  if (a.index() != b.index()) {
    return absl::InvalidArgumentError("cannot compose ledgers of different kinds");
  }
  if (const auto* za = std::get_if<ZCdp>(&a)) {
    const ZCdp parts[] = {*za, std::get<ZCdp>(b)};
    DP2S_ASSIGN_OR_RETURN(ZCdp sum, Compose(parts));
    return PrivacySpent(sum);
  }
  if (const auto* ca = std::get_if<RdpCurve>(&a)) {
    const RdpCurve parts[] = {*ca, std::get<RdpCurve>(b)};
    DP2S_ASSIGN_OR_RETURN(RdpCurve sum, Compose(parts));
    return PrivacySpent(std::move(sum));
  }
  const ApproxDp& da = std::get<ApproxDp>(a);
  const ApproxDp& db = std::get<ApproxDp>(b);
  return PrivacySpent(ApproxDp{da.epsilon + db.epsilon, da.delta + db.delta});
}

absl::StatusOr<double> SpentEpsilon(const PrivacySpent& spent, double delta) {
  if (const auto* z = std::get_if<ZCdp>(&spent)) {
    DP2S_ASSIGN_OR_RETURN(ApproxDp dp, ZcdpToApproxDp(*z, delta));
    return dp.epsilon;
  }
  if (const auto* c = std::get_if<RdpCurve>(&spent)) {
    DP2S_ASSIGN_OR_RETURN(RdpConversion conv, RdpToApproxDp(*c, delta));
    return conv.dp.epsilon;
  }
  return std::get<ApproxDp>(spent).epsilon;
}

}  // namespace dp2s
