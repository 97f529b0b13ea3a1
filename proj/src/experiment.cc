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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "absl/strings/str_format.h"
#include "dp2s/harness.h"
#include "dp2s/status_macros.h"

namespace dp2s {
namespace {

struct Job {
  Variant variant;
  double epsilon;
  uint64_t seed;
};

absl::StatusOr<PlanPolicy> PolicyFor(const ExperimentConfig& c, Variant v,
                                     double epsilon) {
  const ApproxDp target{epsilon, c.delta};
  if (IsMinibatch(v)) {
    if (c.accounting == MinibatchAccounting::kApproxDp) {
      return PlanPolicy(PlanPolicy::SubsampledApproxDp{
          target, c.epsilon_f_fraction * epsilon, c.delta_f_fraction * c.delta});
    }
    return PlanPolicy(
        PlanPolicy::SubsampledRdp{target, c.constants.c_f, TuningGrid{}, {}});
  }
  DP2S_ASSIGN_OR_RETURN(ZCdp rho, ApproxDpToZcdp(target));
  if (v == Variant::kOptLs || v == Variant::kTwoOptLs) {
    return PlanPolicy(
        PlanPolicy::ZcdpLineSearch{rho, c.constants.c_f * rho.rho});
  }
  return PlanPolicy(PlanPolicy::ZcdpShortStep{rho, c.constants.c_f});
}

double SampleStd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double Mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

RunRow RunJob(const ExperimentConfig& config, const LossModel& model,
              const Dataset& data, const Job& job) {
  RunRow row;
  row.variant = VariantName(job.variant);
  row.epsilon = job.epsilon;
  row.seed = job.seed;
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<RunOutcome> outcome =
      RunVariant(config, model, data, job.variant, job.epsilon, job.seed);
  row.runtime_s = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!outcome.ok()) {
    row.status = "error";
    row.final_loss = nan;
    row.rho_spent = nan;
    row.diagnostic = std::string(outcome.status().message());
    return row;
  }
  row.status = RunStatusName(outcome->status);
  row.final_loss = outcome->final_loss;
  row.iters = static_cast<int64_t>(outcome->trace.size());
  row.grad_steps = outcome->counts.gradient_steps;
  row.hess_evals = outcome->counts.hessian_draws;
  row.curv_steps = std::count_if(
      outcome->trace.begin(), outcome->trace.end(), [](const StepRecord& r) {
        return r.kind == StepKind::kNegativeCurvature;
      });
  const ZCdp* rho = std::get_if<ZCdp>(&outcome->privacy);
  row.rho_spent = rho != nullptr ? rho->rho : nan;
  if (!outcome->diagnostics.empty()) row.diagnostic = outcome->diagnostics.back();
  return row;
}

}  // namespace

absl::StatusOr<RunOutcome> RunVariant(const ExperimentConfig& config,
                                      const LossModel& model,
                                      const Dataset& data, Variant variant,
                                      double epsilon, uint64_t seed) {
  DP2S_ASSIGN_OR_RETURN(PlanPolicy policy, PolicyFor(config, variant, epsilon));
  Method method;
  if (variant == Variant::kOptLs || variant == Variant::kTwoOptLs) {
    method.rule = StepRule::kLineSearch;
  }
  if (IsMinibatch(variant)) {
    const int n = data.num_samples();
    const int m = config.batch_size > 0 ? config.batch_size : (n + 9) / 10;
    method.selector = BatchSelector::WithoutReplacement(m);
    method.accounting = config.accounting;
  }
  RunOptions options;
  options.noise_mode = config.zero_noise ? NoiseMode::kZero : NoiseMode::kGaussian;
  options.use_lanczos = config.lanczos;
  options.iteration_limit = config.iteration_limit;
  options.record_loss = false;
  SeededRng rng(seed, 0);
  const Eigen::VectorXd w0 = Eigen::VectorXd::Zero(data.dim());
  if (IsTwoPhase(variant)) {
    return RunTwoPhase(model, data, w0, config.constants, policy, method,
                       config.budget_split, config.phase_one, rng, options);
  }
  return RunMethod(model, data, w0, config.constants, policy, method, rng,
                   options);
}

AggregateReport RunExperiment(const ExperimentConfig& config,
                              const LossModel& model, const Dataset& data) {
  std::vector<Job> jobs;
  for (Variant v : config.variants) {
    for (double e : config.epsilons) {
      for (uint64_t s : config.seeds) jobs.push_back(Job{v, e, s});
    }
  }
  AggregateReport report;
  report.rows.resize(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      report.rows[i] = RunJob(config, model, data, jobs[i]);
    }
  };
  const int threads =
      std::max(1, std::min<int>(config.threads, static_cast<int>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  report.cells = Aggregate(report.rows);
  return report;
}

std::vector<ReportCell> Aggregate(const std::vector<RunRow>& rows) {
  std::vector<ReportCell> cells;
  std::vector<std::vector<const RunRow*>> members;
  for (const RunRow& row : rows) {
    size_t i = 0;
    while (i < cells.size() &&
           !(cells[i].variant == row.variant && cells[i].epsilon == row.epsilon)) {
      ++i;
    }
    if (i == cells.size()) {
      cells.push_back(ReportCell{row.variant, row.epsilon});
      members.emplace_back();
    }
    members[i].push_back(&row);
  }
  for (size_t i = 0; i < cells.size(); ++i) {
    std::vector<double> losses, runtimes, hess;
    for (const RunRow* r : members[i]) {
      losses.push_back(r->final_loss);
      runtimes.push_back(r->runtime_s);
      hess.push_back(static_cast<double>(r->hess_evals));
      if (r->status != RunStatusName(RunStatus::kConverged)) cells[i].failed = true;
    }
    ReportCell& c = cells[i];
    c.runs = static_cast<int>(losses.size());
    c.loss_mean = Mean(losses);
    c.loss_std = SampleStd(losses, c.loss_mean);
    c.runtime_mean = Mean(runtimes);
    c.runtime_std = SampleStd(runtimes, c.runtime_mean);
    c.hess_mean = Mean(hess);
  }
  return cells;
}

}  // namespace dp2s
