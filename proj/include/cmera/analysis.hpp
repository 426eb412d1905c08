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

#include <span>
#include <string>
#include <vector>

#include "cmera/correlators.hpp"
#include "cmera/geometry.hpp"

namespace cmera {

/// Magnitudes below this are treated as underflow.
inline constexpr double kUnderflowFloor = 1e-300;

/// |cmera - qft| / |qft|. Throws DomainError when |qft| < kUnderflowFloor.
double relative_error(double cmera_val, double qft_val);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of log E.
  double residual = 0.0;
  /// Student-t 95% half-width of the slope (infinite with 2 points).
  double half_width = 0.0;
  int points_used = 0;
};

/// Least squares of log E against s. Points with E <= noise_floor are
/// dropped; throws ConvergenceError when fewer than `min_points` remain.
SlopeFit fit_log_slope(std::span<const double> s, std::span<const double> e, double noise_floor = 0.0,
                       int min_points = 4);

struct ErrorScanConfig {
  Channel channel = Channel::PhiPhi;
  Geometry geometry = Geometry::line();
  double m = 1.0;
  /// Entangling scale; <= 0 means "same as m".
  double lambda = 0.0;
  std::vector<double> s_values;
  std::vector<double> x_values;
  /// E at or below this is quadrature noise and excluded from fits.
  double noise_floor = 1e-11;
  TableConfig table{};
};

struct ErrorScanPoint {
  double s = 0.0;
  double x = 0.0;
  double cmera = 0.0;
  double qft = 0.0;
  double error = 0.0;  // relative error E
  /// Outside the trusted window (within a factor 3 of x_UV = e^{-s}/m, or
  /// on the line of the IR length 1/m) or under the noise floor.
  bool excluded = false;
  std::string reason;
};

struct ErrorScan {
  Channel channel = Channel::PhiPhi;
  Geometry geometry = Geometry::line();
  double m = 1.0;
  double lambda = 1.0;
  std::vector<double> s_values;
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::vector<ErrorScanPoint> points;
};

ErrorScan run_error_scan(const ErrorScanConfig& cfg);

/// Fit of log E vs s at the grid point closest to `x` (non-excluded points
/// only).
SlopeFit error_slope_fit(const ErrorScan& scan, double x);
/// Fit of the x-averaged log E (over non-excluded points) vs s.
SlopeFit error_slope_fit(const ErrorScan& scan);

struct TransferRow {
  double x = 0.0;
  double circle_error = 0.0;  // E_c(x)
  double image_bound = 0.0;   // max over significant images of E(x + n l_c), plus the negligible-image share
  int images = 0;
  bool holds = false;
};

struct TransferReport {
  Channel channel = Channel::PhiPhi;
  double m = 0.0;
  double lambda = 0.0;
  double s = 0.0;
  double lc = 0.0;
  double x_uv = 0.0;
  double slack = 0.0;
  std::vector<TransferRow> rows;
  /// max of E over every image point used: the line epsilon.
  double line_epsilon = 0.0;
  double max_circle_error = 0.0;
  bool holds = false;
};

struct TransferConfig {
  double slack = 1e-9;
  /// Images with |C_QFT| below this fraction of the summed reference are
  /// "negligible": their absolute deviation is charged to the bound.
  double significance = 1e-8;
  ImageSumConfig images{};
  LineQuadConfig line{};
};

/// Checks E_c(x) <= max_n E(x + n l_c) + slack on x_grid (points outside
/// [x_uv, l_c / 2] are skipped). Both sides are built from the same line
/// values. Throws PreconditionViolation if the QFT line correlator changes
/// sign across the image points.
TransferReport check_error_transfer(Channel channel, double m, double lambda, double s, double lc, double x_uv,
                                    std::span<const double> x_grid, const TransferConfig& cfg = {});

struct OnsetReport {
  double x_onset = 0.0;
  double x_uv = 0.0;
  double ratio = 0.0;  // x_onset / x_uv
  std::vector<double> x;
  std::vector<double> error;
};

struct OnsetConfig {
  double threshold = 0.05;
  /// Log grid from x_uv * lo_factor to hi_factor / m.
  double lo_factor = 0.05;
  double hi_factor = 10.0;
  int points = 48;
  LineQuadConfig line{};
};

/// Smallest grid x from which E stays below the threshold, on the line
/// with lambda = m. Throws ConvergenceError when the threshold is never
/// reached.
OnsetReport uv_onset_scan(Channel channel, double m, double s, const Geometry& geometry, const OnsetConfig& cfg = {});

}  // namespace cmera
