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
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/ascii.h"
#include "dp2s/harness.h"
#include "dp2s/status_macros.h"

namespace dp2s {
namespace {

absl::Status LineError(int line, const std::string& what) {
  return absl::InvalidArgumentError(absl::StrFormat("line %d: %s", line, what));
}

std::vector<absl::string_view> Lines(absl::string_view text) {
  std::vector<absl::string_view> out;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    out.push_back(absl::StripAsciiWhitespace(line));
  }
  return out;
}

bool ParseRow(absl::string_view line, std::vector<double>& values) {
  values.clear();
  for (absl::string_view field : absl::StrSplit(line, ',')) {
    double v;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(field), &v)) return false;
    values.push_back(v);
  }
  return true;
}

RawTable ToTable(const std::vector<std::vector<double>>& rows,
                 const std::vector<double>& labels, int width) {
  RawTable t;
  t.features = RowMatrix::Zero(static_cast<Eigen::Index>(rows.size()), width);
  t.labels.resize(static_cast<Eigen::Index>(labels.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) t.features(i, j) = rows[i][j];
    t.labels(i) = labels[i];
  }
  return t;
}

void ZScore(RowMatrix& x, int first, int last) {
  const Eigen::Index n = x.rows();
  if (n == 0) return;
  for (int j = first; j < last && j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    const double var = (x.col(j).array() - mean).square().sum() / n;
    const double sd = std::sqrt(var);
    x.col(j).array() -= mean;
    if (sd > 0.0) x.col(j) /= sd;
  }
}

}  // namespace

absl::StatusOr<RawTable> ParseCsv(absl::string_view text,
                                  const LoadOptions& options) {
  const std::vector<absl::string_view> lines = Lines(text);
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  std::vector<double> values;
  int width = -1;
  bool first = true;
  for (size_t i = 0; i < lines.size(); ++i) {
    const absl::string_view line = lines[i];
    if (line.empty()) continue;
    const int lineno = static_cast<int>(i) + 1;
    const bool parsed = ParseRow(line, values);
    if (first) {
      first = false;
      const bool header = options.has_header.value_or(!parsed);
      if (header) continue;
    }
    if (!parsed) return LineError(lineno, "non-numeric field");
    const int cols = static_cast<int>(values.size());
    if (width < 0) width = cols;
    if (cols != width) {
      return LineError(lineno, absl::StrFormat("expected %d fields, got %d",
                                               width, cols));
    }
    const int label = options.label_column < 0 ? cols + options.label_column
                                               : options.label_column;
    if (label < 0 || label >= cols) {
      return LineError(lineno, "label column out of range");
    }
    labels.push_back(values[label]);
    values.erase(values.begin() + label);
    rows.push_back(values);
  }
  if (rows.empty()) return absl::InvalidArgumentError("no data rows");
  return ToTable(rows, labels, width - 1);
}

absl::StatusOr<RawTable> ParseLibsvm(absl::string_view text,
                                     const LoadOptions& options) {
  const std::vector<absl::string_view> lines = Lines(text);
  std::vector<std::vector<std::pair<int, double>>> sparse;
  std::vector<double> labels;
  int width = options.num_features;
  for (size_t i = 0; i < lines.size(); ++i) {
    const absl::string_view line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    const int lineno = static_cast<int>(i) + 1;
    std::vector<absl::string_view> tokens =
        absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    double label;
    if (!absl::SimpleAtod(tokens[0], &label)) {
      return LineError(lineno, absl::StrFormat("bad label '%s'", tokens[0]));
    }
    std::vector<std::pair<int, double>> entries;
    for (size_t t = 1; t < tokens.size(); ++t) {
      std::pair<absl::string_view, absl::string_view> kv =
          absl::StrSplit(tokens[t], absl::MaxSplits(':', 1));
      int index;
      double value;
      if (!absl::SimpleAtoi(kv.first, &index) || index < 1 ||
          !absl::SimpleAtod(kv.second, &value)) {
        return LineError(lineno, absl::StrFormat("bad entry '%s'", tokens[t]));
      }
      if (options.num_features > 0 && index > options.num_features) {
        return LineError(lineno, absl::StrFormat("index %d exceeds %d", index,
                                                 options.num_features));
      }
      if (options.num_features == 0) width = std::max(width, index);
      entries.emplace_back(index - 1, value);
    }
    labels.push_back(label);
    sparse.push_back(std::move(entries));
  }
  if (sparse.empty()) return absl::InvalidArgumentError("no data rows");
  RawTable t;
  t.features = RowMatrix::Zero(static_cast<Eigen::Index>(sparse.size()), width);
  t.labels = Eigen::Map<const Eigen::VectorXd>(labels.data(),
                                               static_cast<Eigen::Index>(labels.size()));
  for (size_t i = 0; i < sparse.size(); ++i) {
    for (const auto& [j, v] : sparse[i]) t.features(i, j) = v;
  }
  return t;
}

absl::StatusOr<RawTable> ApplyPreset(RawTable table, Preset preset) {
  const Eigen::Index n = table.features.rows();
  switch (preset) {
    case Preset::kCovertype: {
      std::vector<Eigen::Index> keep;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double y = table.labels(i);
        if (y == 1.0 || y == 2.0 || y == -1.0) keep.push_back(i);
      }
      RawTable out;
      out.features.resize(static_cast<Eigen::Index>(keep.size()),
                          table.features.cols());
      out.labels.resize(static_cast<Eigen::Index>(keep.size()));
      for (size_t r = 0; r < keep.size(); ++r) {
        out.features.row(r) = table.features.row(keep[r]);
        out.labels(r) = table.labels(keep[r]) == 1.0 ? 1.0 : -1.0;
      }
      ZScore(out.features, 0, 10);
      return out;
    }
    case Preset::kIjcnn:
      ZScore(table.features, 0, static_cast<int>(table.features.cols()));
      [[fallthrough]];
    case Preset::kNone:
      for (Eigen::Index i = 0; i < n; ++i) {
        if (table.labels(i) != 1.0 && table.labels(i) != -1.0) {
          return absl::InvalidArgumentError(absl::StrFormat(
              "row %d: unknown label %g (expected +1 or -1)", i + 1,
              table.labels(i)));
        }
      }
      return table;
  }
  return absl::InternalError("unknown preset");
}

absl::StatusOr<Dataset> FinishDataset(RawTable table, bool unit_ball) {
  if (unit_ball && table.features.rows() > 0) {
    const double r = table.features.rowwise().norm().maxCoeff();
    if (r > 0.0) table.features /= r;
    const double bound =
        std::max(1.0, table.features.rowwise().norm().maxCoeff());
    return Dataset::Create(std::move(table.features), std::move(table.labels),
                           bound);
  }
  return Dataset::Create(std::move(table.features), std::move(table.labels));
}

absl::StatusOr<Dataset> LoadDataset(const std::string& path,
                                    const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrFormat("cannot open %s", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  absl::StatusOr<RawTable> table = options.format == DatasetFormat::kCsv
                                       ? ParseCsv(text, options)
                                       : ParseLibsvm(text, options);
  if (!table.ok()) {
    return absl::Status(table.status().code(),
                        absl::StrFormat("%s: %s", path, table.status().message()));
  }
  DP2S_ASSIGN_OR_RETURN(RawTable processed,
                        ApplyPreset(*std::move(table), options.preset));
  return FinishDataset(std::move(processed), options.unit_ball);
}

}  // namespace dp2s
