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

#include <optional>
#include <string>
#include <vector>

#include "cmera/correlators.hpp"
#include "cmera/images.hpp"
#include "cmera/scale_evolution.hpp"
#include "config.hpp"
#include "output.hpp"

namespace cmera::cli {

/// Numeric knobs shared by every subcommand. Without --tolerance the
/// library defaults apply; with it, every tolerance is derived from t.
struct NumericOptions {
  std::optional<double> tolerance;
  unsigned threads = 0;

  ImageSumPolicy policy() const;
  LineQuadConfig line() const;
  ModeSumConfig modes() const;
  ImageSumConfig images() const;
  TableConfig table(CircleRoute route) const;
  /// ODE Richardson tolerance: 1e4 t, or `fallback`.
  double richardson(double fallback) const;
  /// Sampling-theorem quadrature tolerance: 100 t, or `fallback`.
  double quadrature(double fallback) const;
};

RunResult cmd_profile(ConfigReader& cfg, const NumericOptions& num);
RunResult cmd_beta(ConfigReader& cfg, const NumericOptions& num);
RunResult cmd_correlator(ConfigReader& cfg, const NumericOptions& num);
RunResult cmd_images_check(ConfigReader& cfg, const NumericOptions& num);
RunResult cmd_error_scan(ConfigReader& cfg, const NumericOptions& num);

const std::vector<std::string>& subcommand_names();

/// Dispatches by name; reads "threads" from the config root and rejects
/// unknown keys once the command has consumed the config.
RunResult run_subcommand(const std::string& name, const json& config, std::optional<double> tolerance);

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);

}  // namespace cmera::cli
