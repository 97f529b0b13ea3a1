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

#ifndef DP2S_OPTIMIZER_H_
#define DP2S_OPTIMIZER_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "dp2s/accountant.h"
#include "dp2s/constants.h"
#include "dp2s/line_search.h"
#include "dp2s/mechanisms.h"
#include "dp2s/objective.h"
#include "dp2s/plan_policy.h"

namespace dp2s {

enum class NoiseMode {
  kGaussian,
  // No perturbation at all; the ledger still reflects the plan.
  kZero,
  // Gaussian and Wigner draws are redrawn until they satisfy the bounded-noise
  // conditions of the descent analysis; SVT runs noiselessly.
  kBounded,
};

enum class RunStatus { kConverged, kBudgetExhausted, kFailedTermination };
enum class StepKind { kGradient, kNegativeCurvature, kTerminate };
enum class StepRule { kShortStep, kLineSearch };
enum class MinibatchAccounting { kRdp, kApproxDp };

const char* RunStatusName(RunStatus status);
const char* StepKindName(StepKind kind);

struct StepRecord {
  int64_t index = 0;
  int phase = 1;
  StepKind kind = StepKind::kGradient;
  double step_size = 0.0;
  double loss_before = 0.0;
  double loss_after = 0.0;
  double noisy_grad_norm = 0.0;
  std::optional<double> lambda;  // present iff a Hessian was drawn
  int probes = 0;
  bool fallback = false;
  // Unamplified zCDP cost of the releases made in this iteration.
  double rho_increment = 0.0;
};

struct RunOptions {
  NoiseMode noise_mode = NoiseMode::kGaussian;
  bool use_lanczos = false;
  int dense_cap = Objective::kDefaultDenseCap;
  double wigner_constant = kDefaultWignerConstant;
  // Stops the loop early; the ledger only counts what ran.
  int64_t iteration_limit = std::numeric_limits<int64_t>::max();
  bool record_loss = true;
  int max_rejections = 100000;
  // Test hook for the sparse vector technique; not owned.
  SvtNoise* svt_noise = nullptr;
};

struct RunOutcome {
  RunStatus status = RunStatus::kBudgetExhausted;
  Eigen::VectorXd w_final;
  std::vector<StepRecord> trace;
  PrivacySpent privacy;
  RunCounts counts;
  NoisePlan plan;
  int64_t iteration_budget = 0;
  double min_dec = 0.0;
  double f0_noise = 0.0;
  double final_loss = 0.0;  // full-data loss at w_final
  bool advisory_violated = false;
  std::vector<std::string> diagnostics;
  int phases = 1;
};

// Full-batch Algorithm-1 style run with steps 1/G and 2|lambda|/M.
absl::StatusOr<RunOutcome> RunShortStep(const LossModel& model,
                                        const Dataset& data,
                                        const Eigen::VectorXd& w0,
                                        const AlgorithmConstants& constants,
                                        const PlanPolicy& policy,
                                        SeededRng& rng,
                                        const RunOptions& options = {});

// Full-batch run with SVT backtracking line search for both step kinds.
absl::StatusOr<RunOutcome> RunLineSearch(const LossModel& model,
                                         const Dataset& data,
                                         const Eigen::VectorXd& w0,
                                         const AlgorithmConstants& constants,
                                         const PlanPolicy& policy,
                                         SeededRng& rng,
                                         const RunOptions& options = {});

// Short-step run on batches drawn without replacement each iteration.
absl::StatusOr<RunOutcome> RunMinibatch(const LossModel& model,
                                        const Dataset& data,
                                        const Eigen::VectorXd& w0,
                                        const AlgorithmConstants& constants,
                                        const PlanPolicy& policy,
                                        const BatchSelector& selector,
                                        MinibatchAccounting accounting,
                                        SeededRng& rng,
                                        const RunOptions& options = {});

struct PhaseOnePolicy {
  enum class Kind { kSqrt, kFixed, kFraction };
  Kind kind = Kind::kSqrt;
  double value = 0.0;

  // Phase-one iteration budget for a worst-case budget T, within [1, T].
  int64_t Apply(int64_t T) const;
};

struct Method {
  StepRule rule = StepRule::kShortStep;
  BatchSelector selector = BatchSelector::Full();
  MinibatchAccounting accounting = MinibatchAccounting::kRdp;
};

// Optimistic first phase on `budget_split` of the budget with a reduced T,
// then a standard run from its last iterate on what is left.
absl::StatusOr<RunOutcome> RunTwoPhase(const LossModel& model,
                                       const Dataset& data,
                                       const Eigen::VectorXd& w0,
                                       const AlgorithmConstants& constants,
                                       const PlanPolicy& policy,
                                       const Method& method,
                                       double budget_split,
                                       const PhaseOnePolicy& phase_one,
                                       SeededRng& rng,
                                       const RunOptions& options = {});

// Dispatches a single-phase run of `method`.
absl::StatusOr<RunOutcome> RunMethod(const LossModel& model,
                                     const Dataset& data,
                                     const Eigen::VectorXd& w0,
                                     const AlgorithmConstants& constants,
                                     const PlanPolicy& policy,
                                     const Method& method, SeededRng& rng,
                                     const RunOptions& options = {});

enum class AdvisorVariant { kShortStep, kLineSearch, kMinibatch };

struct SampleSizeBound {
  double value = 0.0;
  int64_t ceiling = 0;
  std::vector<double> branches;
};

// Sample-size conditions for the short-step, line-search and mini-batch runs.
SampleSizeBound MinSamplesBound(const LossBounds& bounds,
                                const AlgorithmConstants& k,
                                const NoisePlan& plan, int64_t T,
                                AdvisorVariant variant, int d,
                                double wigner_constant = kDefaultWignerConstant);
int64_t MinSamplesAdvisor(const LossBounds& bounds,
                          const AlgorithmConstants& k, const NoisePlan& plan,
                          int64_t T, AdvisorVariant variant, int d,
                          double wigner_constant = kDefaultWignerConstant);

// max over step kinds of floor(ln b / ln(1/beta)) + 1.
int AdvisorMaxProbes(const AlgorithmConstants& k);

// Minimum decrease and iteration-budget ingredients for one run setup.
absl::StatusOr<DerivedConstants> DeriveConstants(const LossBounds& bounds,
                                                 const AlgorithmConstants& k,
                                                 StepRule rule,
                                                 bool use_lanczos);

}  // namespace dp2s

#endif  // DP2S_OPTIMIZER_H_
