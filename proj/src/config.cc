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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "dp2s/harness.h"
#include "dp2s/status_macros.h"
#include "json.hpp"

namespace dp2s {
namespace {

using nlohmann::json;

const std::set<std::string>& KnownKeys() {
  static const auto* keys = new std::set<std::string>{
      "dataset",  "format",       "preset",          "header",
      "label_column", "num_features", "unit_ball",   "loss",
      "lambda",   "weight_box",   "variants",        "epsilons",
      "delta",    "tolerance_preset", "constants",   "seeds",
      "batch_size", "minibatch_accounting", "epsilon_f_fraction",
      "delta_f_fraction", "budget_split", "phase_one", "lanczos",
      "zero_noise", "iteration_limit", "threads"};
  return *keys;
}

absl::StatusOr<TolerancePreset> ParseTolerancePreset(const std::string& name) {
  if (name == "covertype_loose") return kCovertypeLoose;
  if (name == "covertype_tight") return kCovertypeTight;
  if (name == "ijcnn_loose") return kIjcnnLoose;
  if (name == "ijcnn_tight") return kIjcnnTight;
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown tolerance preset '%s'", name));
}

absl::Status ParseConstants(const json& j, AlgorithmConstants& k) {
  if (!j.is_object()) return absl::InvalidArgumentError("constants must be an object");
  const std::pair<const char*, double*> fields[] = {
      {"eps_g", &k.eps_g},   {"eps_h", &k.eps_h},     {"c", &k.c},
      {"c1", &k.c1},         {"c2", &k.c2},           {"c_g", &k.c_g},
      {"c_h", &k.c_h},       {"b_g", &k.b_g},         {"b_h", &k.b_h},
      {"beta_g", &k.beta_g}, {"beta_h", &k.beta_h},   {"c_f", &k.c_f},
      {"zeta", &k.zeta},     {"xi", &k.xi},           {"eta", &k.eta},
      {"delta_l", &k.delta_l}};
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (const auto& [name, target] : fields) {
      if (key == name) {
        *target = value.get<double>();
        found = true;
      }
    }
    if (!found) {
      return absl::InvalidArgumentError(
          absl::StrFormat("unknown constant '%s'", key));
    }
  }
  return absl::OkStatus();
}

absl::Status ParseInto(const json& j, ExperimentConfig& c) {
  if (!j.is_object()) return absl::InvalidArgumentError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!KnownKeys().contains(key)) {
      return absl::InvalidArgumentError(absl::StrFormat("unknown key '%s'", key));
    }
  }
  if (j.contains("dataset")) c.dataset = j["dataset"].get<std::string>();
  if (j.contains("format")) {
    const std::string f = j["format"].get<std::string>();
    if (f == "csv") {
      c.load.format = DatasetFormat::kCsv;
    } else if (f == "libsvm") {
      c.load.format = DatasetFormat::kLibsvm;
    } else {
      return absl::InvalidArgumentError(absl::StrFormat("unknown format '%s'", f));
    }
  }
  if (j.contains("preset")) {
    const std::string p = j["preset"].get<std::string>();
    if (p == "none") {
      c.load.preset = Preset::kNone;
    } else if (p == "covertype") {
      c.load.preset = Preset::kCovertype;
    } else if (p == "ijcnn") {
      c.load.preset = Preset::kIjcnn;
    } else {
      return absl::InvalidArgumentError(absl::StrFormat("unknown preset '%s'", p));
    }
  }
  if (j.contains("header")) c.load.has_header = j["header"].get<bool>();
  if (j.contains("label_column")) c.load.label_column = j["label_column"].get<int>();
  if (j.contains("num_features")) c.load.num_features = j["num_features"].get<int>();
  if (j.contains("unit_ball")) c.load.unit_ball = j["unit_ball"].get<bool>();
  if (j.contains("loss")) c.loss = j["loss"].get<std::string>();
  if (j.contains("lambda")) c.lambda_reg = j["lambda"].get<double>();
  if (j.contains("weight_box")) c.weight_box = j["weight_box"].get<double>();
  if (j.contains("variants")) {
    c.variants.clear();
    for (const auto& v : j["variants"]) {
      DP2S_ASSIGN_OR_RETURN(Variant parsed, ParseVariant(v.get<std::string>()));
      c.variants.push_back(parsed);
    }
  }
  if (j.contains("epsilons")) c.epsilons = j["epsilons"].get<std::vector<double>>();
  if (j.contains("delta")) c.delta = j["delta"].get<double>();
  if (j.contains("tolerance_preset")) {
    DP2S_ASSIGN_OR_RETURN(TolerancePreset t,
                          ParseTolerancePreset(j["tolerance_preset"].get<std::string>()));
    c.constants.eps_g = t.eps_g;
    c.constants.eps_h = t.eps_h;
  }
  if (j.contains("constants")) {
    DP2S_RETURN_IF_ERROR(ParseConstants(j["constants"], c.constants));
  }
  if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<uint64_t>>();
  if (j.contains("batch_size")) c.batch_size = j["batch_size"].get<int>();
  if (j.contains("minibatch_accounting")) {
    const std::string a = j["minibatch_accounting"].get<std::string>();
    if (a == "rdp") {
      c.accounting = MinibatchAccounting::kRdp;
    } else if (a == "approx_dp") {
      c.accounting = MinibatchAccounting::kApproxDp;
    } else {
      return absl::InvalidArgumentError(
          absl::StrFormat("unknown minibatch accounting '%s'", a));
    }
  }
  if (j.contains("epsilon_f_fraction")) {
    c.epsilon_f_fraction = j["epsilon_f_fraction"].get<double>();
  }
  if (j.contains("delta_f_fraction")) {
    c.delta_f_fraction = j["delta_f_fraction"].get<double>();
  }
  if (j.contains("budget_split")) c.budget_split = j["budget_split"].get<double>();
  if (j.contains("phase_one")) {
    const json& p = j["phase_one"];
    const std::string kind = p.value("policy", "sqrt");
    if (kind == "sqrt") {
      c.phase_one.kind = PhaseOnePolicy::Kind::kSqrt;
    } else if (kind == "fixed") {
      c.phase_one.kind = PhaseOnePolicy::Kind::kFixed;
    } else if (kind == "fraction") {
      c.phase_one.kind = PhaseOnePolicy::Kind::kFraction;
    } else {
      return absl::InvalidArgumentError(
          absl::StrFormat("unknown phase-one policy '%s'", kind));
    }
    c.phase_one.value = p.value("value", 0.0);
  }
  if (j.contains("lanczos")) c.lanczos = j["lanczos"].get<bool>();
  if (j.contains("zero_noise")) c.zero_noise = j["zero_noise"].get<bool>();
  if (j.contains("iteration_limit")) {
    c.iteration_limit = j["iteration_limit"].get<int64_t>();
  }
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Variant> ParseVariant(absl::string_view name) {
  if (name == "opt") return Variant::kOpt;
  if (name == "opt_b") return Variant::kOptB;
  if (name == "opt_ls") return Variant::kOptLs;
  if (name == "2opt") return Variant::kTwoOpt;
  if (name == "2opt_b") return Variant::kTwoOptB;
  if (name == "2opt_ls") return Variant::kTwoOptLs;
  return absl::InvalidArgumentError(absl::StrFormat("unknown variant '%s'", name));
}

const char* VariantName(Variant v) {
  switch (v) {
    case Variant::kOpt:
      return "opt";
    case Variant::kOptB:
      return "opt_b";
    case Variant::kOptLs:
      return "opt_ls";
    case Variant::kTwoOpt:
      return "2opt";
    case Variant::kTwoOptB:
      return "2opt_b";
    case Variant::kTwoOptLs:
      return "2opt_ls";
  }
  return "unknown";
}

bool IsMinibatch(Variant v) {
  return v == Variant::kOptB || v == Variant::kTwoOptB;
}

bool IsTwoPhase(Variant v) {
  return v == Variant::kTwoOpt || v == Variant::kTwoOptB ||
         v == Variant::kTwoOptLs;
}

absl::StatusOr<ExperimentConfig> ParseConfigJson(absl::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) return absl::InvalidArgumentError("config is not valid JSON");
  ExperimentConfig config;
  try {
    DP2S_RETURN_IF_ERROR(ParseInto(j, config));
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrFormat("config: %s", e.what()));
  }
  return config;
}

absl::StatusOr<ExperimentConfig> LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrFormat("cannot open %s", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigJson(buffer.str());
}

absl::Status ValidateConfig(const ExperimentConfig& c) {
  if (c.dataset.empty()) return absl::InvalidArgumentError("no dataset given");
  if (c.variants.empty()) return absl::InvalidArgumentError("no variants given");
  if (c.epsilons.empty()) return absl::InvalidArgumentError("no epsilons given");
  for (double e : c.epsilons) {
    if (!(e > 0.0)) return absl::InvalidArgumentError("epsilons must be positive");
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (c.seeds.empty()) return absl::InvalidArgumentError("no seeds given");
  if (c.batch_size < 0) return absl::InvalidArgumentError("batch size must be >= 0");
  if (!(c.budget_split > 0.0 && c.budget_split < 1.0)) {
    return absl::InvalidArgumentError("budget split must lie in (0, 1)");
  }
  if (!(c.epsilon_f_fraction > 0.0 && c.epsilon_f_fraction < 1.0) ||
      !(c.delta_f_fraction > 0.0 && c.delta_f_fraction < 1.0)) {
    return absl::InvalidArgumentError("f-release fractions must lie in (0, 1)");
  }
  if (c.threads < 1) return absl::InvalidArgumentError("threads must be >= 1");
  if (c.iteration_limit < 1) {
    return absl::InvalidArgumentError("iteration limit must be >= 1");
  }
  if (!(c.lambda_reg >= 0.0) || !(c.weight_box > 0.0)) {
    return absl::InvalidArgumentError("need lambda >= 0 and weight_box > 0");
  }
  DP2S_RETURN_IF_ERROR(ValidateShortStepConstants(c.constants));
  for (Variant v : c.variants) {
    if (v == Variant::kOptLs || v == Variant::kTwoOptLs) {
      DP2S_RETURN_IF_ERROR(ValidateLineSearchConstants(c.constants));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> ResolveDataset(const ExperimentConfig& config) {
  const std::string kPrefix = "synth:";
  if (config.dataset.rfind(kPrefix, 0) != 0) {
    return LoadDataset(config.dataset, config.load);
  }
  const std::vector<std::string> parts =
      absl::StrSplit(config.dataset.substr(kPrefix.size()), ':');
  if (parts.size() < 3 || parts.size() > 4) {
    return absl::InvalidArgumentError(
        "synthetic dataset spec is synth:<kind>:<n>:<d>[:<seed>]");
  }
  DP2S_ASSIGN_OR_RETURN(SynthKind kind, ParseSynthKind(parts[0]));
  int n = 0;
  int d = 0;
  uint64_t seed = 0;
  if (!absl::SimpleAtoi(parts[1], &n) || !absl::SimpleAtoi(parts[2], &d) ||
      (parts.size() == 4 && !absl::SimpleAtoi(parts[3], &seed))) {
    return absl::InvalidArgumentError(
        absl::StrFormat("bad synthetic dataset spec '%s'", config.dataset));
  }
  return SynthDataset(kind, n, d, seed);
}

absl::StatusOr<std::unique_ptr<LossModel>> MakeModel(
    const ExperimentConfig& config, const Dataset& data) {
  const double r = data.feature_norm_bound();
  if (config.loss == "nonconvex_logistic") {
    return NonconvexLogistic(config.lambda_reg, r, data.dim(), config.weight_box);
  }
  if (config.loss == "l2_logistic") {
    return L2Logistic(config.lambda_reg, r, data.dim(), config.weight_box);
  }
  if (config.loss == "quartic_saddle") {
    return QuarticSaddle(r, data.dim(), config.weight_box);
  }
  return absl::InvalidArgumentError(absl::StrFormat("unknown loss '%s'", config.loss));
}

}  // namespace dp2s
