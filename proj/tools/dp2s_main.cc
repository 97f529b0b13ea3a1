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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_format.h"
#include "dp2s/harness.h"

namespace {

constexpr int kConfigError = 2;
constexpr int kIoError = 3;

int Fail(int code, const std::string& message) {
  std::cerr << "dp2s: " << message << "\n";
  return code;
}

int WriteSynth(const std::string& kind_name, int n, int d, uint64_t seed,
               const std::string& path) {
  absl::StatusOr<dp2s::SynthKind> kind = dp2s::ParseSynthKind(kind_name);
  if (!kind.ok()) return Fail(kConfigError, std::string(kind.status().message()));
  absl::StatusOr<dp2s::Dataset> data = dp2s::SynthDataset(*kind, n, d, seed);
  if (!data.ok()) return Fail(kConfigError, std::string(data.status().message()));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return Fail(kIoError, "cannot write " + path);
  for (int i = 0; i < data->num_samples(); ++i) {
    for (int j = 0; j < data->dim(); ++j) {
      out << absl::StrFormat("%.17g,", data->features()(i, j));
    }
    out << absl::StrFormat("%g\n", data->labels()(i));
  }
  return out ? 0 : Fail(kIoError, "write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private optimization with second-order guarantees"};
  app.require_subcommand(0, 1);

  std::string config_path, dataset, out_path, format = "csv";
  std::vector<std::string> variants;
  std::vector<double> epsilons;
  std::vector<uint64_t> seeds;
  double delta = 0.0;
  int batch_size = -1;
  int threads = 0;
  bool zero_noise = false;
  bool lanczos = false;
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--dataset", dataset, "path, or synth:<kind>:<n>:<d>[:<seed>]");
  app.add_option("--variant", variants, "opt, opt_b, opt_ls, 2opt, 2opt_b, 2opt_ls")
      ->delimiter(',');
  app.add_option("--epsilon", epsilons, "privacy levels")->delimiter(',');
  app.add_option("--delta", delta, "delta of the (epsilon, delta) target");
  app.add_option("--seeds", seeds, "seed list")->delimiter(',');
  app.add_option("--batch-size", batch_size, "mini-batch size (0: n/10)");
  app.add_option("--threads", threads, "worker threads");
  app.add_flag("--zero-noise", zero_noise, "disable all noise (test mode)");
  app.add_flag("--lanczos", lanczos, "Lanczos minimum eigenvalue");
  app.add_option("--out", out_path, "report file (default stdout)");
  app.add_option("--format", format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));

  CLI::App* synth = app.add_subcommand("synth", "write a synthetic dataset as CSV");
  std::string synth_kind = "planted_saddle", synth_out;
  int synth_n = 1000, synth_d = 10;
  uint64_t synth_seed = 0;
  synth->add_option("--kind", synth_kind, "planted_saddle or logistic_separable");
  synth->add_option("--n", synth_n, "rows");
  synth->add_option("--d", synth_d, "columns");
  synth->add_option("--seed", synth_seed, "seed");
  synth->add_option("--out", synth_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (synth->parsed()) {
    return WriteSynth(synth_kind, synth_n, synth_d, synth_seed, synth_out);
  }

  dp2s::ExperimentConfig config;
  if (!config_path.empty()) {
    absl::StatusOr<dp2s::ExperimentConfig> loaded = dp2s::LoadConfigFile(config_path);
    if (!loaded.ok()) return Fail(kConfigError, std::string(loaded.status().message()));
    config = *std::move(loaded);
  }
  if (!dataset.empty()) config.dataset = dataset;
  if (!variants.empty()) {
    config.variants.clear();
    for (const std::string& v : variants) {
      absl::StatusOr<dp2s::Variant> parsed = dp2s::ParseVariant(v);
      if (!parsed.ok()) return Fail(kConfigError, std::string(parsed.status().message()));
      config.variants.push_back(*parsed);
    }
  }
  if (!epsilons.empty()) config.epsilons = epsilons;
  if (delta > 0.0) config.delta = delta;
  if (!seeds.empty()) config.seeds = seeds;
  if (batch_size >= 0) config.batch_size = batch_size;
  if (threads > 0) config.threads = threads;
  if (zero_noise) config.zero_noise = true;
  if (lanczos) config.lanczos = true;

  if (absl::Status s = dp2s::ValidateConfig(config); !s.ok()) {
    return Fail(kConfigError, std::string(s.message()));
  }
  absl::StatusOr<dp2s::Dataset> data = dp2s::ResolveDataset(config);
  if (!data.ok()) return Fail(kConfigError, std::string(data.status().message()));
  absl::StatusOr<std::unique_ptr<dp2s::LossModel>> model =
      dp2s::MakeModel(config, *data);
  if (!model.ok()) return Fail(kConfigError, std::string(model.status().message()));

  const dp2s::AggregateReport report = dp2s::RunExperiment(config, **model, *data);
  for (const dp2s::RunRow& row : report.rows) {
    if (!row.diagnostic.empty()) {
      std::cerr << absl::StrFormat("%s eps=%g seed=%d: %s\n", row.variant,
                                   row.epsilon, row.seed, row.diagnostic);
    }
  }
  const dp2s::ReportFormat fmt = format == "markdown" ? dp2s::ReportFormat::kMarkdown
                                                      : dp2s::ReportFormat::kCsv;
  if (out_path.empty()) {
    absl::StatusOr<std::string> text = dp2s::EmitReport(report, fmt);
    if (!text.ok()) return Fail(kIoError, std::string(text.status().message()));
    std::cout << *text;
    return 0;
  }
  if (absl::Status s = dp2s::WriteReport(report, fmt, out_path); !s.ok()) {
    return Fail(kIoError, std::string(s.message()));
  }
  return 0;
}
