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

#include "dp2s/optimizer.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"
#include "dp2s/spectral.h"
#include "dp2s/status_macros.h"

namespace dp2s {
namespace {

struct Engine {
  StepRule rule = StepRule::kShortStep;
  BatchSelector selector = BatchSelector::Full();
  AccountingMode mode = AccountingMode::kShortStep;
  // Maps the worst-case T to the T actually run (two-phase first phase).
  std::function<int64_t(int64_t)> budget_transform;
  int phase = 1;
};

std::vector<double> PolicyOrders(const PlanPolicy& policy) {
  if (const auto* p = std::get_if<PlanPolicy::SubsampledRdp>(&policy.spec())) {
    return p->grid.orders;
  }
  return DefaultRdpOrders();
}

double InfNorm(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double SpectralNorm(const Eigen::MatrixXd& e) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      e, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

absl::StatusOr<Eigen::VectorXd> GradientNoise(int d, double scale,
                                              double radius,
                                              const RunOptions& options,
                                              SeededRng& rng) {
  switch (options.noise_mode) {
    case NoiseMode::kZero:
      return GaussianVector(d, 0.0, rng);
    case NoiseMode::kGaussian:
      return GaussianVector(d, scale, rng);
    case NoiseMode::kBounded:
      for (int i = 0; i < options.max_rejections; ++i) {
        Eigen::VectorXd e = GaussianVector(d, scale, rng);
        if (e.norm() <= radius) return e;
      }
      return absl::ResourceExhaustedError(absl::StrFormat(
          "gradient noise rejection exceeded %d draws (radius %g, scale %g)",
          options.max_rejections, radius, scale));
  }
  return absl::InternalError("unknown noise mode");
}

absl::StatusOr<Eigen::MatrixXd> HessianNoise(int d, double scale,
                                             double radius,
                                             const RunOptions& options,
                                             SeededRng& rng) {
  switch (options.noise_mode) {
    case NoiseMode::kZero:
      return WignerMatrix(d, 0.0, rng).entries;
    case NoiseMode::kGaussian:
      return WignerMatrix(d, scale, rng).entries;
    case NoiseMode::kBounded:
      for (int i = 0; i < options.max_rejections; ++i) {
        Eigen::MatrixXd e = WignerMatrix(d, scale, rng).entries;
        if (SpectralNorm(e) <= radius) return e;
      }
      return absl::ResourceExhaustedError(absl::StrFormat(
          "Hessian noise rejection exceeded %d draws (radius %g, scale %g)",
          options.max_rejections, radius, scale));
  }
  return absl::InternalError("unknown noise mode");
}

double StepRho(const NoisePlan& plan, bool hessian, bool svt) {
  double sum = 1.0 / (plan.sigma_g * plan.sigma_g);
  if (hessian) sum += 1.0 / (plan.sigma_h * plan.sigma_h);
  if (svt) {
    const double lambda = plan.lambda_svt.value_or(plan.sigma_g);
    sum += 1.0 / (lambda * lambda);
  }
  return 0.5 * sum;
}

absl::StatusOr<RunOutcome> RunEngine(const LossModel& model,
                                     const Dataset& data,
                                     const Eigen::VectorXd& w0,
                                     const AlgorithmConstants& k,
                                     const PlanPolicy& policy,
                                     const Engine& engine, SeededRng& rng,
                                     const RunOptions& options) {
  const int n = data.num_samples();
  const int d = data.dim();
  if (model.dim() != d || w0.size() != d) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "dimension mismatch: model %d, data %d, w0 %d", model.dim(), d,
        static_cast<int>(w0.size())));
  }
  const int m = engine.selector.batch_size(n);
  if (m < 1 || m > n) {
    return absl::InvalidArgumentError(
        absl::StrFormat("batch size %d must lie in [1, %d]", m, n));
  }
  const bool line_search = engine.rule == StepRule::kLineSearch;
  if (line_search && !engine.selector.is_full()) {
    return absl::InvalidArgumentError("line search runs on the full dataset");
  }
  const LossBounds& bounds = model.bounds();
  DP2S_ASSIGN_OR_RETURN(DerivedConstants derived,
                        DeriveConstants(bounds, k, engine.rule,
                                        options.use_lanczos));
  const double eps_h_eff = options.use_lanczos ? 0.5 * k.eps_h : k.eps_h;
  const double G = bounds.gradient_lipschitz;
  const double M = bounds.hessian_lipschitz;

  DP2S_ASSIGN_OR_RETURN(Sensitivities full_sens,
                        ComputeSensitivities(bounds, n, d));
  DP2S_ASSIGN_OR_RETURN(Sensitivities sens, ComputeSensitivities(bounds, m, d));

  RunOutcome out;
  out.phases = 1;
  out.min_dec = derived.min_dec;

  const Objective full(model, Batch::Full(data), options.dense_cap);
  DP2S_ASSIGN_OR_RETURN(double sigma_f, policy.SigmaF());
  const double f0 = full.Value(w0);
  const double z_draw = rng.Normal();
  out.f0_noise = options.noise_mode == NoiseMode::kGaussian
                     ? z_draw * full_sens.delta_f * sigma_f
                     : 0.0;
  DP2S_ASSIGN_OR_RETURN(
      int64_t T, IterationBudget(f0, out.f0_noise, bounds.lower, derived.min_dec));
  if (engine.budget_transform) T = engine.budget_transform(T);
  out.iteration_budget = T;
  const double s = static_cast<double>(m) / static_cast<double>(n);
  DP2S_ASSIGN_OR_RETURN(out.plan, policy.Finalize(T, s));
  const NoisePlan& plan = out.plan;

  if (!engine.selector.is_full() || engine.mode == AccountingMode::kMinibatchRdp ||
      engine.mode == AccountingMode::kMinibatchApproxDp) {
    const int64_t m_min = MinBatchSize(bounds, k, T, k.eta, d);
    if (m < m_min) {
      out.advisory_violated = true;
      out.diagnostics.push_back(absl::StrFormat(
          "batch size %d is below the advisory minimum %d", m, m_min));
    }
  }

  const double grad_scale = sens.delta_g * plan.sigma_g;
  const double hess_scale = sens.delta_h * plan.sigma_h;
  const double grad_radius = std::min(k.c1 * k.eps_g, k.c2 * eps_h_eff * eps_h_eff / M);
  const double hess_radius = k.c * eps_h_eff;
  const double lambda = plan.lambda_svt.value_or(plan.sigma_g);
  ZeroSvtNoise zero_svt;
  LaplaceSvtNoise laplace_svt;
  SvtNoise* svt = options.svt_noise;
  if (svt == nullptr) {
    svt = options.noise_mode == NoiseMode::kGaussian
              ? static_cast<SvtNoise*>(&laplace_svt)
              : static_cast<SvtNoise*>(&zero_svt);
  }

  Eigen::VectorXd w = w0;
  const double box = model.weight_box();
  out.status = RunStatus::kBudgetExhausted;
  const int64_t limit = std::min(T, options.iteration_limit);
  for (int64_t it = 0; it < limit; ++it) {
    DP2S_ASSIGN_OR_RETURN(Batch batch, engine.selector.Draw(data, rng));
    const Objective obj(model, std::move(batch), options.dense_cap);
    StepRecord rec;
    rec.index = it;
    rec.phase = engine.phase;
    if (options.record_loss) rec.loss_before = full.Value(w);

    const Eigen::VectorXd g = obj.Gradient(w);
    DP2S_ASSIGN_OR_RETURN(Eigen::VectorXd noise,
                          GradientNoise(d, grad_scale, grad_radius, options, rng));
    const Eigen::VectorXd g_noisy = g + noise;
    const double g_norm = g_noisy.norm();
    rec.noisy_grad_norm = g_norm;

    Eigen::VectorXd w_next;
    if (g_norm > k.eps_g) {
      ++out.counts.gradient_steps;
      rec.kind = StepKind::kGradient;
      if (!line_search) {
        rec.step_size = 1.0 / G;
      } else {
        const double f_w = obj.Value(w);
        const double gamma_bar = derived.gamma_bar_g;
        const double gamma_init = k.b_g * gamma_bar;
        const double delta_q = 2.0 / m * gamma_init * bounds.gradient * g_norm;
        auto query = [&](double gamma) {
          return f_w - obj.Value(w - gamma * g_noisy) - k.c_g * gamma * g_norm * g_norm;
        };
        DP2S_ASSIGN_OR_RETURN(
            LineSearchResult ls,
            DpLineSearch(query, delta_q, gamma_init, gamma_bar, k.beta_g,
                         lambda, rng, svt));
        ++out.counts.line_searches;
        rec.step_size = ls.step;
        rec.probes = ls.probes;
        rec.fallback = ls.fallback;
      }
      rec.rho_increment = StepRho(plan, false, line_search);
      w_next = w - rec.step_size * g_noisy;
    } else {
      ++out.counts.hessian_draws;
      SeededRng noise_rng = rng.Fork();
      const bool dense = d <= options.dense_cap;
      const bool use_lanczos = options.use_lanczos || !dense;
      const double norm_bound =
          bounds.hessian + options.wigner_constant * std::sqrt(static_cast<double>(d)) *
                               hess_scale;
      EigenResult eig;
      if (dense) {
        DP2S_ASSIGN_OR_RETURN(Eigen::MatrixXd h, obj.Hessian(w));
        DP2S_ASSIGN_OR_RETURN(Eigen::MatrixXd e,
                              HessianNoise(d, hess_scale, hess_radius, options,
                                           noise_rng));
        const Eigen::MatrixXd h_noisy = h + e;
        if (use_lanczos) {
          SeededRng lanczos_rng = rng.Fork();
          SymmetricOperator op{
              d, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return h_noisy * v; },
              &h_noisy};
          DP2S_ASSIGN_OR_RETURN(eig, LanczosMinEig(op, norm_bound, k.eps_h,
                                                   k.delta_l, lanczos_rng,
                                                   options.dense_cap));
        } else {
          DP2S_ASSIGN_OR_RETURN(eig, MinEigenpairDense(h_noisy));
        }
      } else {
        if (options.noise_mode == NoiseMode::kBounded) {
          return absl::UnimplementedError(
              "bounded noise needs a dense Hessian; raise dense_cap");
        }
        const double scale =
            options.noise_mode == NoiseMode::kZero ? 0.0 : hess_scale;
        const WignerOperator wigner(d, scale, noise_rng);
        SeededRng lanczos_rng = rng.Fork();
        SymmetricOperator op{d,
                             [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
                               Eigen::VectorXd r = obj.Hvp(w, v);
                               wigner.AddApply(v, r);
                               return r;
                             },
                             nullptr};
        DP2S_ASSIGN_OR_RETURN(eig, LanczosMinEig(op, norm_bound, k.eps_h,
                                                 k.delta_l, lanczos_rng,
                                                 options.dense_cap));
      }
      const CurvatureDecision decision = DecideCurvature(eig, k.eps_h);
      rec.lambda = decision.lambda;
      if (!decision.negative_curvature || !decision.direction.has_value()) {
        rec.kind = StepKind::kTerminate;
        rec.rho_increment = StepRho(plan, true, false);
        rec.loss_after = rec.loss_before;
        out.trace.push_back(rec);
        out.status = RunStatus::kConverged;
        break;
      }
      rec.kind = StepKind::kNegativeCurvature;
      const Eigen::VectorXd p = Orient(*decision.direction, g_noisy);
      const double abs_lambda = std::abs(decision.lambda);
      if (!line_search) {
        rec.step_size = 2.0 * abs_lambda / M;
      } else {
        const double f_w = obj.Value(w);
        const double gamma_bar = derived.t2 * abs_lambda / M;
        const double gamma_init = k.b_h * gamma_bar;
        const double delta_q = 2.0 / m * gamma_init * bounds.gradient;
        auto query = [&](double gamma) {
          return f_w - obj.Value(w + gamma * p) - 0.5 * k.c_h * gamma * gamma * abs_lambda;
        };
        DP2S_ASSIGN_OR_RETURN(
            LineSearchResult ls,
            DpLineSearch(query, delta_q, gamma_init, gamma_bar, k.beta_h,
                         lambda, rng, svt));
        ++out.counts.line_searches;
        rec.step_size = ls.step;
        rec.probes = ls.probes;
        rec.fallback = ls.fallback;
      }
      rec.rho_increment = StepRho(plan, true, line_search);
      w_next = w + rec.step_size * p;
    }

    if (!(InfNorm(w_next) <= box)) {
      out.trace.push_back(rec);
      out.status = RunStatus::kFailedTermination;
      out.diagnostics.push_back(absl::StrFormat(
          "iteration %d left the weight box: |w|_inf = %g > %g", it,
          InfNorm(w_next), box));
      break;
    }
    w = std::move(w_next);
    if (options.record_loss) rec.loss_after = full.Value(w);
    out.trace.push_back(rec);
  }

  out.w_final = w;
  out.final_loss = full.Value(w);
  DP2S_ASSIGN_OR_RETURN(out.privacy,
                        AccountRun(out.counts, plan, engine.mode,
                                   PolicyOrders(policy)));
  return out;
}

Engine MakeEngine(const Method& method) {
  Engine engine;
  engine.rule = method.rule;
  engine.selector = method.selector;
  if (method.selector.is_full()) {
    engine.mode = method.rule == StepRule::kLineSearch
                      ? AccountingMode::kLineSearch
                      : AccountingMode::kShortStep;
  } else {
    engine.mode = method.accounting == MinibatchAccounting::kRdp
                      ? AccountingMode::kMinibatchRdp
                      : AccountingMode::kMinibatchApproxDp;
  }
  return engine;
}

}  // namespace

const char* RunStatusName(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged:
      return "converged_2s";
    case RunStatus::kBudgetExhausted:
      return "budget_exhausted";
    case RunStatus::kFailedTermination:
      return "failed_termination";
  }
  return "unknown";
}

const char* StepKindName(StepKind kind) {
  switch (kind) {
    case StepKind::kGradient:
      return "gradient";
    case StepKind::kNegativeCurvature:
      return "negative_curvature";
    case StepKind::kTerminate:
      return "terminate";
  }
  return "unknown";
}

absl::StatusOr<DerivedConstants> DeriveConstants(const LossBounds& bounds,
                                                 const AlgorithmConstants& k,
                                                 StepRule rule,
                                                 bool use_lanczos) {
  DerivedConstants out;
  const double G = bounds.gradient_lipschitz;
  const double M = bounds.hessian_lipschitz;
  const double eps_h = use_lanczos ? 0.5 * k.eps_h : k.eps_h;
  if (rule == StepRule::kShortStep) {
    DP2S_RETURN_IF_ERROR(ValidateShortStepConstants(k));
    DP2S_ASSIGN_OR_RETURN(out.min_dec,
                          MinDecShort(G, M, k.eps_g, eps_h, k.c1, k.c2, k.c));
  } else {
    DP2S_RETURN_IF_ERROR(ValidateLineSearchConstants(k));
    DP2S_ASSIGN_OR_RETURN(auto roots, RootsT1T2(k.c, k.c2, k.c_h));
    out.t1 = roots.first;
    out.t2 = roots.second;
    DP2S_ASSIGN_OR_RETURN(out.min_dec,
                          MinDecLineSearch(G, M, k.eps_g, eps_h, k.c1, k.c_g,
                                           k.c_h, out.t2));
  }
  out.gamma_bar_g = 2.0 * (1.0 - k.c1 - k.c_g) / G;
  return out;
}

absl::StatusOr<RunOutcome> RunMethod(const LossModel& model,
                                     const Dataset& data,
                                     const Eigen::VectorXd& w0,
                                     const AlgorithmConstants& constants,
                                     const PlanPolicy& policy,
                                     const Method& method, SeededRng& rng,
                                     const RunOptions& options) {
  return RunEngine(model, data, w0, constants, policy, MakeEngine(method), rng,
                   options);
}

absl::StatusOr<RunOutcome> RunShortStep(const LossModel& model,
                                        const Dataset& data,
                                        const Eigen::VectorXd& w0,
                                        const AlgorithmConstants& constants,
                                        const PlanPolicy& policy,
                                        SeededRng& rng,
                                        const RunOptions& options) {
  return RunMethod(model, data, w0, constants, policy, Method{}, rng, options);
}

absl::StatusOr<RunOutcome> RunLineSearch(const LossModel& model,
                                         const Dataset& data,
                                         const Eigen::VectorXd& w0,
                                         const AlgorithmConstants& constants,
                                         const PlanPolicy& policy,
                                         SeededRng& rng,
                                         const RunOptions& options) {
  Method method;
  method.rule = StepRule::kLineSearch;
  return RunMethod(model, data, w0, constants, policy, method, rng, options);
}

absl::StatusOr<RunOutcome> RunMinibatch(const LossModel& model,
                                        const Dataset& data,
                                        const Eigen::VectorXd& w0,
                                        const AlgorithmConstants& constants,
                                        const PlanPolicy& policy,
                                        const BatchSelector& selector,
                                        MinibatchAccounting accounting,
                                        SeededRng& rng,
                                        const RunOptions& options) {
  Method method;
  method.selector = selector;
  method.accounting = accounting;
  Engine engine = MakeEngine(method);
  engine.mode = accounting == MinibatchAccounting::kRdp
                    ? AccountingMode::kMinibatchRdp
                    : AccountingMode::kMinibatchApproxDp;
  return RunEngine(model, data, w0, constants, policy, engine, rng, options);
}

int64_t PhaseOnePolicy::Apply(int64_t T) const {
  double t = 1.0;
  switch (kind) {
    case Kind::kSqrt:
      t = std::ceil(std::sqrt(static_cast<double>(T)));
      break;
    case Kind::kFixed:
      t = value;
      break;
    case Kind::kFraction:
      t = std::ceil(value * static_cast<double>(T));
      break;
  }
  if (!(t >= 1.0)) return 1;
  if (t >= static_cast<double>(T)) return T;
  return static_cast<int64_t>(t);
}

absl::StatusOr<RunOutcome> RunTwoPhase(const LossModel& model,
                                       const Dataset& data,
                                       const Eigen::VectorXd& w0,
                                       const AlgorithmConstants& constants,
                                       const PlanPolicy& policy,
                                       const Method& method,
                                       double budget_split,
                                       const PhaseOnePolicy& phase_one,
                                       SeededRng& rng,
                                       const RunOptions& options) {
  if (!(budget_split > 0.0 && budget_split < 1.0)) {
    return absl::InvalidArgumentError("budget split must lie in (0, 1)");
  }
  DP2S_ASSIGN_OR_RETURN(PlanPolicy first_policy, policy.Scaled(budget_split));
  Engine first = MakeEngine(method);
  first.budget_transform = [phase_one](int64_t T) { return phase_one.Apply(T); };
  DP2S_ASSIGN_OR_RETURN(RunOutcome one, RunEngine(model, data, w0, constants,
                                                  first_policy, first, rng,
                                                  options));
  if (one.status == RunStatus::kConverged) return one;
  if (one.status == RunStatus::kFailedTermination) {
    one.diagnostics.push_back("phase two skipped after failed termination");
    return one;
  }

  DP2S_ASSIGN_OR_RETURN(PlanPolicy second_policy, policy.Remaining(one.privacy));
  Engine second = MakeEngine(method);
  second.phase = 2;
  DP2S_ASSIGN_OR_RETURN(RunOutcome two, RunEngine(model, data, one.w_final,
                                                  constants, second_policy,
                                                  second, rng, options));
  const int64_t offset = static_cast<int64_t>(one.trace.size());
  RunOutcome out = std::move(two);
  for (StepRecord& rec : out.trace) rec.index += offset;
  out.trace.insert(out.trace.begin(), one.trace.begin(), one.trace.end());
  DP2S_ASSIGN_OR_RETURN(out.privacy, ComposeSpent(one.privacy, out.privacy));
  out.counts.gradient_steps += one.counts.gradient_steps;
  out.counts.hessian_draws += one.counts.hessian_draws;
  out.counts.line_searches += one.counts.line_searches;
  out.advisory_violated = out.advisory_violated || one.advisory_violated;
  out.diagnostics.insert(out.diagnostics.begin(), one.diagnostics.begin(),
                         one.diagnostics.end());
  out.phases = 2;
  return out;
}

int AdvisorMaxProbes(const AlgorithmConstants& k) {
  return std::max(LineSearchMaxProbes(k.b_g, 1.0, k.beta_g),
                  LineSearchMaxProbes(k.b_h, 1.0, k.beta_h));
}

SampleSizeBound MinSamplesBound(const LossBounds& bounds,
                                const AlgorithmConstants& k,
                                const NoisePlan& plan, int64_t T,
                                AdvisorVariant variant, int d,
                                double wigner_constant) {
  const double M = bounds.hessian_lipschitz;
  const double B_g = bounds.gradient;
  const double B_h = bounds.hessian;
  const double Td = static_cast<double>(T);
  const double log_t = std::log(Td / k.zeta);
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const double gradient_radius =
      std::min(k.c1 * k.eps_g, k.c2 / M * (k.eps_h * k.eps_h));
  const double scale = variant == AdvisorVariant::kMinibatch ? 2.0 : 1.0;

  SampleSizeBound out;
  out.branches.push_back(scale * std::sqrt(2.0 * d) * B_g * plan.sigma_g *
                         log_t / gradient_radius);
  out.branches.push_back(scale * wigner_constant * sqrt_d * B_h * plan.sigma_h *
                         log_t / (k.c * k.eps_h));
  if (variant == AdvisorVariant::kLineSearch) {
    const double lambda = plan.lambda_svt.value_or(plan.sigma_g);
    const double t2 = RootsT1T2(k.c, k.c2, k.c_h).value_or(std::make_pair(0.0, 0.0)).second;
    const double i_max = AdvisorMaxProbes(k);
    out.branches.push_back(
        16.0 * lambda * (std::log(i_max) + std::log(Td / k.xi)) * B_g *
        std::max(2.0 * k.b_g / (k.c_g * k.eps_g),
                 4.0 * k.b_h * M / (t2 * k.c_h * (k.eps_h * k.eps_h))));
  }
  if (variant == AdvisorVariant::kMinibatch) {
    const double s = plan.subsample_fraction;
    const double log_dt = std::log(2.0 * d * Td / k.eta);
    const double eps_h2 = k.eps_h * k.eps_h;
    out.branches.push_back(
        (1.0 / s) * 64.0 * B_g * B_g * (log_dt + 0.25) *
        std::max(1.0 / (k.c1 * k.c1) / (k.eps_g * k.eps_g),
                 M * M / (k.c2 * k.c2) / (eps_h2 * eps_h2)));
    out.branches.push_back((1.0 / s) * 32.0 * B_h * B_h * log_dt /
                           (k.c * k.c) / eps_h2);
  }
  out.value = *std::max_element(out.branches.begin(), out.branches.end());
  const double ceiling = std::ceil(out.value);
  out.ceiling = ceiling >= static_cast<double>(std::numeric_limits<int64_t>::max())
                    ? std::numeric_limits<int64_t>::max()
                    : static_cast<int64_t>(ceiling);
  return out;
}

int64_t MinSamplesAdvisor(const LossBounds& bounds,
                          const AlgorithmConstants& k, const NoisePlan& plan,
                          int64_t T, AdvisorVariant variant, int d,
                          double wigner_constant) {
  return MinSamplesBound(bounds, k, plan, T, variant, d, wigner_constant)
      .ceiling;
}

}  // namespace dp2s
