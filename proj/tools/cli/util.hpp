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

// Helpers shared by the subcommand implementations.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "cmera/error.hpp"
#include "config.hpp"
#include "output.hpp"

namespace cmera::cli {

/// Shortest of %.15g and %.17g that reads back to v.
inline std::string num_literal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Gnuplot filter selecting a numeric column equal to v.
inline std::string eq_filter(int col, double v) {
  return "abs($" + std::to_string(col) + " - " + num_literal(v) + ") <= 1e-12 * (1 + abs(" + num_literal(v) + "))";
}

inline std::string str_filter(int col, const std::string& v) { return "strcol(" + std::to_string(col) + ") eq \"" + v + "\""; }

inline Cell lc_cell(const Geometry& g) { return g.is_circle() ? Cell{g.circle_length()} : Cell{}; }

inline std::string geom_label(const Geometry& g) {
  return g.is_circle() ? "circle(lc=" + num_literal(g.circle_length()) + ")" : g.kind_name();
}

inline std::vector<double> require_list(ConfigReader& r, const std::string& key, const std::vector<double>& fallback) {
  auto v = r.numbers(key, fallback);
  if (v.empty()) throw ConfigError("config field '" + r.field(key) + "': must not be empty");
  return v;
}

inline std::vector<double> non_negative_list(ConfigReader& r, const std::string& key, const std::vector<double>& fallback) {
  auto v = require_list(r, key, fallback);
  for (double s : v) {
    if (s < 0.0) throw ConfigError("config field '" + r.field(key) + "': values must be >= 0");
  }
  return v;
}

inline json default_geometries() {
  return json::array({json{{"kind", "line"}}, json{{"kind", "circle"}, {"lc", 1.0}}});
}

inline std::vector<Geometry> read_geometries(ConfigReader& cfg, const std::string& key, bool allow_line, bool allow_circle) {
  std::vector<Geometry> out;
  for (auto& gr : cfg.objects(key, default_geometries())) {
    Geometry g = parse_geometry(gr);
    gr.finish();
    if (!((g.is_line() && allow_line) || (g.is_circle() && allow_circle))) {
      throw ConfigError("config field '" + gr.field("kind") + "': geometry '" + g.kind_name() +
                        "' is not supported by this subcommand");
    }
    out.push_back(g);
  }
  if (out.empty()) throw ConfigError("config field '" + cfg.field(key) + "': must not be empty");
  return out;
}


}  // namespace cmera::cli
