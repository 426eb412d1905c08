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

#include "config.hpp"

#include <cmath>
#include <utility>

#include "cmera/error.hpp"

namespace cmera::cli {

ConfigReader::ConfigReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
  if (!obj_.is_object()) throw ConfigError("config field '" + (path_.empty() ? "<root>" : path_) + "': expected an object");
}

std::string ConfigReader::field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool ConfigReader::has(const std::string& key) const { return obj_.contains(key); }

const json* ConfigReader::get(const std::string& key) {
  used_.insert(key);
  auto it = obj_.find(key);
  return it == obj_.end() ? nullptr : &*it;
}

double ConfigReader::number(const std::string& key, double fallback) {
  const json* v = get(key);
  if (v == nullptr) return fallback;
  if (!v->is_number()) throw ConfigError("config field '" + field(key) + "': expected a number");
  const double d = v->get<double>();
  if (!std::isfinite(d)) throw ConfigError("config field '" + field(key) + "': must be finite");
  return d;
}

double ConfigReader::positive(const std::string& key, double fallback) {
  const double d = number(key, fallback);
  if (!(d > 0.0)) throw ConfigError("config field '" + field(key) + "': must be > 0");
  return d;
}

double ConfigReader::non_negative(const std::string& key, double fallback) {
  const double d = number(key, fallback);
  if (!(d >= 0.0)) throw ConfigError("config field '" + field(key) + "': must be >= 0");
  return d;
}

int ConfigReader::integer(const std::string& key, int fallback, int min_value) {
  const json* v = get(key);
  if (v == nullptr) return fallback;
  if (!v->is_number_integer()) throw ConfigError("config field '" + field(key) + "': expected an integer");
  const long long n = v->get<long long>();
  if (n < min_value || n > 100000000) {
    throw ConfigError("config field '" + field(key) + "': must be >= " + std::to_string(min_value));
  }
  return static_cast<int>(n);
}

bool ConfigReader::boolean(const std::string& key, bool fallback) {
  const json* v = get(key);
  if (v == nullptr) return fallback;
  if (!v->is_boolean()) throw ConfigError("config field '" + field(key) + "': expected true or false");
  return v->get<bool>();
}

std::string ConfigReader::string(const std::string& key, const std::string& fallback) {
  const json* v = get(key);
  if (v == nullptr) return fallback;
  if (!v->is_string()) throw ConfigError("config field '" + field(key) + "': expected a string");
  return v->get<std::string>();
}

std::vector<double> ConfigReader::numbers(const std::string& key, const std::vector<double>& fallback) {
  const json* v = get(key);
  if (v == nullptr) return fallback;
  if (v->is_number()) return {number(key, 0.0)};
  if (!v->is_array()) throw ConfigError("config field '" + field(key) + "': expected a number or an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    const json& e = (*v)[i];
    if (!e.is_number() || !std::isfinite(e.get<double>())) {
      throw ConfigError("config field '" + field(key) + "[" + std::to_string(i) + "]': expected a finite number");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::string> ConfigReader::strings(const std::string& key, const std::vector<std::string>& fallback) {
  const json* v = get(key);
  if (v == nullptr) return fallback;
  if (v->is_string()) return {v->get<std::string>()};
  if (!v->is_array()) throw ConfigError("config field '" + field(key) + "': expected a string or an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_string()) {
      throw ConfigError("config field '" + field(key) + "[" + std::to_string(i) + "]': expected a string");
    }
    out.push_back((*v)[i].get<std::string>());
  }
  return out;
}

ConfigReader ConfigReader::object(const std::string& key) {
  const json* v = get(key);
  if (v == nullptr) return ConfigReader(json::object(), field(key));
  return ConfigReader(*v, field(key));
}

std::vector<ConfigReader> ConfigReader::objects(const std::string& key, const json& fallback) {
  const json* v = get(key);
  const json& arr = v == nullptr ? fallback : *v;
  if (!arr.is_array()) throw ConfigError("config field '" + field(key) + "': expected an array of objects");
  std::vector<ConfigReader> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.emplace_back(arr[i], field(key) + "[" + std::to_string(i) + "]");
  return out;
}

Geometry ConfigReader::geometry(const std::string& key, const Geometry& fallback) {
  if (!has(key)) {
    get(key);
    return fallback;
  }
  ConfigReader g = object(key);
  Geometry geom = parse_geometry(g);
  g.finish();
  return geom;
}

void ConfigReader::finish() const {
  for (auto it = obj_.begin(); it != obj_.end(); ++it) {
    if (!used_.contains(it.key())) throw ConfigError("config field '" + field(it.key()) + "': unknown key");
  }
}

Geometry parse_geometry(ConfigReader& r) {
  const std::string kind = r.string("kind", "line");
  if (kind == "line") return Geometry::line();
  if (kind == "circle") return Geometry::circle(r.positive("lc", 1.0));
  if (kind == "torus") {
    const double l1 = r.positive("l1", 1.0);
    return Geometry::torus(l1, r.positive("l2", l1));
  }
  if (kind == "halfline") {
    const std::string bc = r.string("bc", "neumann");
    if (bc == "neumann") return Geometry::half_line(BoundaryCondition::Neumann);
    if (bc == "dirichlet") return Geometry::half_line(BoundaryCondition::Dirichlet);
    throw ConfigError("config field '" + r.field("bc") + "': expected neumann or dirichlet");
  }
  throw ConfigError("config field '" + r.field("kind") + "': expected line, circle, torus or halfline");
}

json geometry_to_json(const Geometry& g) {
  json j;
  j["kind"] = g.kind_name();
  if (g.is_circle()) j["lc"] = g.circle_length();
  if (g.is_torus()) {
    j["l1"] = g.period(0);
    j["l2"] = g.period(1);
  }
  if (g.is_half_line()) {
    j["bc"] = std::get<HalfLine>(g.variant()).bc == BoundaryCondition::Neumann ? "neumann" : "dirichlet";
  }
  return j;
}

}  // namespace cmera::cli
