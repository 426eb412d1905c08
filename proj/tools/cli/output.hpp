// Copyright 2026 The cmera Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace cmera::cli {

using nlohmann::json;

/// Empty cell, float, integer or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

/// One curve of a generated gnuplot script. Columns are 1-based; `filter`
/// is a gnuplot boolean expression selecting rows (empty selects all).
struct Series {
  std::string title;
  std::string filter;
  int xcol = 1;
  int ycol = 2;
};

struct PlotSpec {
  /// Output image stem; empty means the dataset name.
  std::string image;
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool logx = false;
  bool logy = false;
  std::vector<Series> series;
};

struct Dataset {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<PlotSpec> plots;

  /// 1-based index of a column, for plot specs.
  int column(const std::string& name) const;
  void add(std::vector<Cell> row);
};

/// A numeric cross-check computed during a run. Enforced checks decide the
/// exit status; the others are reported diagnostics.
struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
  bool enforced = true;
};

struct RunResult {
  std::vector<Dataset> datasets;
  std::vector<Check> checks;
  json summary = json::object();

  void check(std::string name, double value, double limit, bool enforced = true);
  bool all_enforced_passed() const;
};

enum class Format { Csv, Json };

struct RunContext {
  std::string subcommand;
  std::filesystem::path out_dir;
  Format format = Format::Csv;
  std::optional<double> tolerance;
  /// The config as read from disk (or {} for defaults).
  json config = json::object();
};

/// %.17g; nan and inf are spelled out.
std::string format_double(double v);

/// Compact JSON with every float printed to 17 significant digits.
std::string dump_json(const json& j, int indent = -1);

/// Writes every dataset (plus a gnuplot script per CSV) and a summary file
/// into ctx.out_dir. Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const RunContext& ctx, const RunResult& result);

json checks_to_json(const std::vector<Check>& checks);

}  // namespace cmera::cli
