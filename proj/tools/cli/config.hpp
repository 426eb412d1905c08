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

#include <set>
#include <string>
#include <vector>

#include "cmera/geometry.hpp"
#include "json.hpp"

namespace cmera::cli {

using nlohmann::json;

/// Strict reader over one JSON object: every access is recorded and
/// finish() rejects keys that were never read. Errors name the full field
/// path, e.g. "panels[1].x.points".
class ConfigReader {
 public:
  ConfigReader(const json& obj, std::string path);

  bool has(const std::string& key) const;

  double number(const std::string& key, double fallback);
  double positive(const std::string& key, double fallback);
  double non_negative(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback, int min_value);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<std::string> strings(const std::string& key, const std::vector<std::string>& fallback);

  /// Child object (empty object when absent).
  ConfigReader object(const std::string& key);
  /// Array of objects; `fallback` is used when the key is absent.
  std::vector<ConfigReader> objects(const std::string& key, const json& fallback);

  /// Geometry from {"kind": "line" | "circle" | "torus" | "halfline", ...}.
  Geometry geometry(const std::string& key, const Geometry& fallback);

  void finish() const;

  std::string field(const std::string& key) const;
  const json& raw() const { return obj_; }

 private:
  const json* get(const std::string& key);

  json obj_;
  std::string path_;
  std::set<std::string> used_;
};

Geometry parse_geometry(ConfigReader& r);
json geometry_to_json(const Geometry& g);

}  // namespace cmera::cli
