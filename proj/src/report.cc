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
#include <fstream>
#include <string>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dp2s/harness.h"

namespace dp2s {
namespace {

constexpr const char* kCsvHeader =
    "variant,epsilon,seed,status,final_loss,runtime_s,iters,grad_steps,"
    "curv_steps,hess_evals,rho_spent";

std::string CsvRow(const RunRow& r) {
  return absl::StrFormat("%s,%.17g,%d,%s,%.17g,%.17g,%d,%d,%d,%d,%.17g",
                         r.variant, r.epsilon, r.seed, r.status, r.final_loss,
                         r.runtime_s, r.iters, r.grad_steps, r.curv_steps,
                         r.hess_evals, r.rho_spent);
}

std::string Markdown(const AggregateReport& report) {
  std::vector<std::string> variants;
  std::vector<double> epsilons;
  for (const ReportCell& c : report.cells) {
    if (std::find(variants.begin(), variants.end(), c.variant) == variants.end()) {
      variants.push_back(c.variant);
    }
    if (std::find(epsilons.begin(), epsilons.end(), c.epsilon) == epsilons.end()) {
      epsilons.push_back(c.epsilon);
    }
  }
  auto find = [&](const std::string& v, double e) -> const ReportCell* {
    for (const ReportCell& c : report.cells) {
      if (c.variant == v && c.epsilon == e) return &c;
    }
    return nullptr;
  };

  std::string out = "| method |";
  std::string rule = "|---|";
  for (double e : epsilons) {
    absl::StrAppendFormat(&out, " loss (eps=%g) | runtime (eps=%g) |", e, e);
    rule += "---|---|";
  }
  absl::StrAppend(&out, "\n", rule, "\n");
  for (const std::string& v : variants) {
    absl::StrAppend(&out, "| ", v, " |");
    for (double e : epsilons) {
      const ReportCell* c = find(v, e);
      if (c == nullptr) {
        absl::StrAppend(&out, " - | - |");
        continue;
      }
      absl::StrAppendFormat(&out, " %.3f ± %.3f | %.3f ± %.3f%s |", c->loss_mean,
                            c->loss_std, c->runtime_mean, c->runtime_std,
                            c->failed ? " ×" : "");
    }
    absl::StrAppend(&out, "\n");
  }

  absl::StrAppend(&out, "\n| method |");
  rule = "|---|";
  for (double e : epsilons) {
    absl::StrAppendFormat(&out, " Hess evals (eps=%g) |", e);
    rule += "---|";
  }
  absl::StrAppend(&out, "\n", rule, "\n");
  for (const std::string& v : variants) {
    absl::StrAppend(&out, "| ", v, " |");
    for (double e : epsilons) {
      const ReportCell* c = find(v, e);
      if (c == nullptr) {
        absl::StrAppend(&out, " - |");
      } else {
        absl::StrAppendFormat(&out, " %.1f |", c->hess_mean);
      }
    }
    absl::StrAppend(&out, "\n");
  }
  return out;
}

}  // namespace

absl::StatusOr<std::string> EmitReport(const AggregateReport& report,
                                       ReportFormat format) {
  if (report.rows.empty() || report.cells.empty()) {
    return absl::FailedPreconditionError("report has no runs");
  }
  if (format == ReportFormat::kMarkdown) return Markdown(report);
  std::string out = absl::StrCat(kCsvHeader, "\n");
  for (const RunRow& r : report.rows) absl::StrAppend(&out, CsvRow(r), "\n");
  return out;
}

absl::StatusOr<std::vector<RunRow>> ParseReportCsv(absl::string_view text) {
  std::vector<RunRow> rows;
  bool header = true;
  int lineno = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++lineno;
    const absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) {
        return absl::InvalidArgumentError("unexpected report header");
      }
      header = false;
      continue;
    }
    const std::vector<absl::string_view> f = absl::StrSplit(line, ',');
    if (f.size() != 11) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: expected 11 fields, got %d", lineno, f.size()));
    }
    RunRow r;
    r.variant = std::string(f[0]);
    r.status = std::string(f[3]);
    const bool ok = absl::SimpleAtod(f[1], &r.epsilon) &&
                    absl::SimpleAtoi(f[2], &r.seed) &&
                    absl::SimpleAtod(f[4], &r.final_loss) &&
                    absl::SimpleAtod(f[5], &r.runtime_s) &&
                    absl::SimpleAtoi(f[6], &r.iters) &&
                    absl::SimpleAtoi(f[7], &r.grad_steps) &&
                    absl::SimpleAtoi(f[8], &r.curv_steps) &&
                    absl::SimpleAtoi(f[9], &r.hess_evals) &&
                    absl::SimpleAtod(f[10], &r.rho_spent);
    if (!ok) return absl::InvalidArgumentError(absl::StrFormat("line %d: bad field", lineno));
    rows.push_back(std::move(r));
  }
  if (header) return absl::InvalidArgumentError("empty report");
  return rows;
}

absl::Status WriteReport(const AggregateReport& report, ReportFormat format,
                         const std::string& path) {
  absl::StatusOr<std::string> text = EmitReport(report, format);
  if (!text.ok()) return text.status();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrFormat("cannot write %s", path));
  out << *text;
  out.close();
  if (!out) return absl::DataLossError(absl::StrFormat("write to %s failed", path));
  return absl::OkStatus();
}

}  // namespace dp2s
