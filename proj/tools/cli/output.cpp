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

#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmera/error.hpp"

namespace cmera::cli {

namespace fs = std::filesystem;

int Dataset::column(const std::string& col) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == col) return static_cast<int>(i) + 1;
  }
  throw Error("dataset '" + name + "' has no column '" + col + "'");
}

void Dataset::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("dataset '" + name + "': row width mismatch");
  rows.push_back(std::move(row));
}

void RunResult::check(std::string name, double value, double limit, bool enforced) {
  checks.push_back({std::move(name), value, limit, value <= limit, enforced});
}

bool RunResult::all_enforced_passed() const {
  for (const auto& c : checks) {
    if (c.enforced && !c.passed) return false;
  }
  return true;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(std::ostringstream& os, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        dump_into(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        newline(depth + 1);
        dump_into(os, j[i], indent, depth + 1);
      }
      newline(depth);
      os << ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_double(v) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return {};
}

std::string cell_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    return std::isfinite(v) ? format_double(v) : "null";
  }
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<std::string>(c)) return json(std::get<std::string>(c)).dump();
  return "null";
}

std::string quote_gp(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

json header_json(const RunContext& ctx) {
  json h;
  h["cmera"] = CMERA_VERSION;
  h["subcommand"] = ctx.subcommand;
  h["config"] = ctx.config;
  h["tolerance"] = ctx.tolerance ? json(*ctx.tolerance) : json(nullptr);
  return h;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + path.string() + "'");
  f << text;
  if (!f) throw ConfigError("failed writing '" + path.string() + "'");
}

std::string csv_text(const RunContext& ctx, const Dataset& d) {
  std::ostringstream os;
  os << "# cmera " << CMERA_VERSION << '\n';
  os << "# subcommand: " << ctx.subcommand << '\n';
  os << "# dataset: " << d.name << '\n';
  os << "# tolerance: " << (ctx.tolerance ? format_double(*ctx.tolerance) : "default") << '\n';
  os << "# config: " << dump_json(ctx.config) << '\n';
  for (std::size_t i = 0; i < d.columns.size(); ++i) os << (i ? "," : "") << d.columns[i];
  os << '\n';
  for (const auto& row : d.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string dataset_json(const RunContext& ctx, const Dataset& d) {
  std::ostringstream os;
  json head = header_json(ctx);
  head["dataset"] = d.name;
  head["columns"] = d.columns;
  std::string h = dump_json(head);
  h.pop_back();  // reopen the object to append rows
  os << h << ",\"rows\":[";
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    os << (r ? ",\n" : "\n") << '[';
    for (std::size_t i = 0; i < d.rows[r].size(); ++i) os << (i ? "," : "") << cell_json(d.rows[r][i]);
    os << ']';
  }
  os << "\n]}\n";
  return os.str();
}

void plot_text(std::ostringstream& os, const PlotSpec& p, const std::string& stem, const std::string& csv_name) {
  os << "\nreset\n";
  os << "set datafile separator \",\"\n";
  os << "set datafile commentschars \"#\"\n";
  os << "set title " << quote_gp(p.title.empty() ? stem : p.title) << '\n';
  os << "set xlabel " << quote_gp(p.xlabel) << '\n';
  os << "set ylabel " << quote_gp(p.ylabel) << '\n';
  if (p.logx) os << "set logscale x\n";
  if (p.logy) os << "set logscale y\n";
  os << "set key outside right\n";
  os << "set terminal pngcairo size 1000,700\n";
  os << "set output " << quote_gp((p.image.empty() ? stem : p.image) + ".png") << '\n';
  if (p.series.empty()) {
    os << "# no curves\n";
    return;
  }
  os << "plot";
  for (std::size_t i = 0; i < p.series.size(); ++i) {
    const Series& s = p.series[i];
    os << (i ? ", \\\n    " : " ") << quote_gp(csv_name) << " using ";
    if (s.filter.empty()) {
      os << s.xcol << ':' << s.ycol;
    } else {
      os << '(' << s.filter << " ? $" << s.xcol << " : 1/0):" << s.ycol;
    }
    os << " with linespoints pt 7 ps 0.4 title " << quote_gp(s.title);
  }
  os << '\n';
}

std::string gnuplot_text(const Dataset& d, const std::string& csv_name) {
  std::ostringstream os;
  os << "# gnuplot script for " << csv_name << "\n";
  for (const auto& p : d.plots) plot_text(os, p, d.name, csv_name);
  return os.str();
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  dump_into(os, j, indent, 0);
  return os.str();
}

json checks_to_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"passed", c.passed},
                   {"enforced", c.enforced}});
  }
  return arr;
}

std::vector<fs::path> write_outputs(const RunContext& ctx, const RunResult& result) {
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + ctx.out_dir.string() + "': " + ec.message());

  std::vector<fs::path> written;
  for (const auto& d : result.datasets) {
    if (ctx.format == Format::Csv) {
      const fs::path csv = ctx.out_dir / (d.name + ".csv");
      write_file(csv, csv_text(ctx, d));
      written.push_back(csv);
      const fs::path gp = ctx.out_dir / (d.name + ".gp");
      write_file(gp, gnuplot_text(d, d.name + ".csv"));
      written.push_back(gp);
    } else {
      const fs::path js = ctx.out_dir / (d.name + ".json");
      write_file(js, dataset_json(ctx, d));
      written.push_back(js);
    }
  }

  json summary = header_json(ctx);
  summary["summary"] = result.summary;
  summary["checks"] = checks_to_json(result.checks);
  summary["passed"] = result.all_enforced_passed();
  const fs::path sp = ctx.out_dir / (ctx.subcommand + ".summary.json");
  write_file(sp, dump_json(summary, 2) + "\n");
  written.push_back(sp);
  return written;
}

}  // namespace cmera::cli
