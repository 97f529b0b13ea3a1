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

#ifndef DP2S_HARNESS_H_
#define DP2S_HARNESS_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dp2s/constants.h"
#include "dp2s/objective.h"
#include "dp2s/optimizer.h"

namespace dp2s {


enum class DatasetFormat { kCsv, kLibsvm };
enum class Preset { kNone, kCovertype, kIjcnn };

struct LoadOptions {
  DatasetFormat format = DatasetFormat::kCsv;
  Preset preset = Preset::kNone;
  // Unset: a first line that does not parse as numbers is a header.
  std::optional<bool> has_header;
  // Zero-based; negative counts from the end (-1 = last column).
  int label_column = -1;
  // libsvm only; 0 infers the width from the largest index.
  int num_features = 0;
  // Divide every row by the largest row norm so that R = 1.
  bool unit_ball = false;
};

// Features and raw labels before any label policy is applied.
struct RawTable {
  RowMatrix features;
  Eigen::VectorXd labels;
};

absl::StatusOr<RawTable> ParseCsv(absl::string_view text,
                                  const LoadOptions& options);
absl::StatusOr<RawTable> ParseLibsvm(absl::string_view text,
                                     const LoadOptions& options);

// Covertype: z-score columns 1-10, keep labels 1 and 2 and recode 2 to -1
// (labels already in {+1, -1} are kept as they are). IJCNN: z-score every
// column. None: labels must already be +1 or -1.
absl::StatusOr<RawTable> ApplyPreset(RawTable table, Preset preset);

absl::StatusOr<Dataset> FinishDataset(RawTable table, bool unit_ball);

absl::StatusOr<Dataset> LoadDataset(const std::string& path,
                                    const LoadOptions& options);

enum class SynthKind { kPlantedSaddle, kLogisticSeparable };

absl::StatusOr<SynthKind> ParseSynthKind(absl::string_view name);

// planted_saddle: rows sqrt(d) Q e_j on a round-robin axis j with a seeded
// rotation Q; labels +1 on the first ceil(d/2) axes and -1 on the rest. Paired
// with QuarticSaddle(sqrt(d), d, W) the average loss has a strict saddle at 0.
// logistic_separable: Gaussian rows clipped to the unit ball, labelled by a
// seeded unit direction with 10% of labels flipped.
absl::StatusOr<Dataset> SynthDataset(SynthKind kind, int n, int d,
                                     uint64_t seed);

// Same construction with the label split of planted_saddle set explicitly;
// positive_axes = d gives the isotropic quartic 1/4||w||^4 - 1/2||w||^2.
absl::StatusOr<Dataset> PlantedSaddle(int n, int d, int positive_axes,
                                      uint64_t seed);


enum class Variant { kOpt, kOptB, kOptLs, kTwoOpt, kTwoOptB, kTwoOptLs };

absl::StatusOr<Variant> ParseVariant(absl::string_view name);
const char* VariantName(Variant v);
bool IsMinibatch(Variant v);
bool IsTwoPhase(Variant v);

struct ExperimentConfig {
  // A file path, or synth:<kind>:<n>:<d>[:<seed>].
  std::string dataset;
  LoadOptions load;

  std::string loss = "nonconvex_logistic";
  double lambda_reg = 1e-3;
  double weight_box = 10.0;

  std::vector<Variant> variants = {Variant::kOpt};
  std::vector<double> epsilons = {1.0};
  double delta = 1e-5;
  AlgorithmConstants constants;
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4};

  int batch_size = 0;  // 0 means ceil(n / 10)
  MinibatchAccounting accounting = MinibatchAccounting::kRdp;
  double epsilon_f_fraction = 0.1;  // approx-DP mini-batch split
  double delta_f_fraction = 0.1;
  double budget_split = 0.75;
  PhaseOnePolicy phase_one;

  bool lanczos = false;
  bool zero_noise = false;
  int64_t iteration_limit = std::numeric_limits<int64_t>::max();
  int threads = 1;
};

absl::StatusOr<ExperimentConfig> ParseConfigJson(absl::string_view text);
absl::StatusOr<ExperimentConfig> LoadConfigFile(const std::string& path);
absl::Status ValidateConfig(const ExperimentConfig& config);

absl::StatusOr<Dataset> ResolveDataset(const ExperimentConfig& config);
absl::StatusOr<std::unique_ptr<LossModel>> MakeModel(
    const ExperimentConfig& config, const Dataset& data);

struct RunRow {
  std::string variant;
  double epsilon = 0.0;
  uint64_t seed = 0;
  std::string status;
  double final_loss = 0.0;
  double runtime_s = 0.0;
  int64_t iters = 0;
  int64_t grad_steps = 0;
  int64_t curv_steps = 0;
  int64_t hess_evals = 0;
  double rho_spent = 0.0;
  std::string diagnostic;  // not serialized
};

struct ReportCell {
  std::string variant;
  double epsilon = 0.0;
  int runs = 0;
  double loss_mean = 0.0;
  double loss_std = 0.0;
  double runtime_mean = 0.0;
  double runtime_std = 0.0;
  double hess_mean = 0.0;
  bool failed = false;
};

struct AggregateReport {
  std::vector<RunRow> rows;
  std::vector<ReportCell> cells;
};

// One seeded run of one variant at one privacy level.
absl::StatusOr<RunOutcome> RunVariant(const ExperimentConfig& config,
                                      const LossModel& model,
                                      const Dataset& data, Variant variant,
                                      double epsilon, uint64_t seed);

// Every (variant, epsilon, seed) in configured order. A failing run becomes a
// row with status "error"; the sweep itself does not abort.
AggregateReport RunExperiment(const ExperimentConfig& config,
                              const LossModel& model, const Dataset& data);

// Cells in order of first appearance of each (variant, epsilon).
std::vector<ReportCell> Aggregate(const std::vector<RunRow>& rows);

enum class ReportFormat { kCsv, kMarkdown };

absl::StatusOr<std::string> EmitReport(const AggregateReport& report,
                                       ReportFormat format);
absl::StatusOr<std::vector<RunRow>> ParseReportCsv(absl::string_view text);
absl::Status WriteReport(const AggregateReport& report, ReportFormat format,
                         const std::string& path);

}  // namespace dp2s

#endif  // DP2S_HARNESS_H_
