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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cmera/analysis.hpp"
#include "cmera/error.hpp"
#include "testing.hpp"

namespace cmera {
namespace {

TEST(RelativeError, Values) {
  EXPECT_DOUBLE_EQ(relative_error(1.1, 1.0), 0.10000000000000009);
  EXPECT_DOUBLE_EQ(relative_error(-2.0, -1.0), 1.0);
  EXPECT_EQ(relative_error(3.0, 3.0), 0.0);
  EXPECT_THROW(relative_error(1.0, 0.0), DomainError);
  EXPECT_THROW(relative_error(1.0, 1e-301), DomainError);
}

TEST(SlopeFit, ExactExponential) {
  const std::vector<double> s = {2.0, 2.5, 3.0, 3.5};
  std::vector<double> e;
  for (double v : s) e.push_back(0.7 * std::exp(-2.0 * v));
  const SlopeFit f = fit_log_slope(s, e);
  EXPECT_NEAR(f.slope, -2.0, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(0.7), 1e-12);
  EXPECT_LT(f.residual, 1e-12);
  EXPECT_EQ(f.points_used, 4);
  EXPECT_LT(f.half_width, 1e-10);
}

TEST(SlopeFit, NoiseFloorAndErrors) {
  const std::vector<double> s = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> e = {1e-2, 1e-4, 1e-12, 1e-13};
  EXPECT_THROW(fit_log_slope(s, e, 1e-11), ConvergenceError);
  const SlopeFit two = fit_log_slope(s, e, 1e-11, 2);
  EXPECT_EQ(two.points_used, 2);
  EXPECT_NEAR(two.slope, std::log(1e-2), 1e-12);
  EXPECT_TRUE(std::isinf(two.half_width));
  const std::vector<double> short_e = {1.0, 2.0};
  EXPECT_THROW(fit_log_slope(s, short_e), DomainError);
  const std::vector<double> same_s = {1.0, 1.0, 1.0, 1.0};
  EXPECT_THROW(fit_log_slope(same_s, e, 0.0, 2), DomainError);
}

TEST(SlopeFitProperty, RecoversLinearData) {
  testing::for_all("slope fit", 200, 91, [](testing::Gen& g, std::ostringstream& t) {
    const double slope = g.uniform(-5.0, 1.0), icpt = g.uniform(-10.0, 2.0);
    const int n = g.integer(3, 12);
    t << "slope=" << slope << " icpt=" << icpt << " n=" << n;
    std::vector<double> s, e;
    for (int i = 0; i < n; ++i) {
      s.push_back(g.uniform(0.0, 6.0) + i * 1e-3);
      e.push_back(std::exp(icpt + slope * s.back()));
    }
    const SlopeFit f = fit_log_slope(s, e, 0.0, 3);
    EXPECT_NEAR(f.slope, slope, 1e-9);
    EXPECT_NEAR(f.intercept, icpt, 1e-8);
  });
}

TEST(ErrorScan, ExclusionWindow) {
  ErrorScanConfig cfg;
  cfg.m = 1.0;
  cfg.s_values = {2.0};
  cfg.x_values = {0.2, 1.0, 5.0};
  const ErrorScan scan = run_error_scan(cfg);
  ASSERT_EQ(scan.points.size(), 3u);
  // x_UV = e^-2 ~ 0.135: x = 0.2 is within a factor 3 of it.
  EXPECT_TRUE(scan.points[0].excluded);
  EXPECT_EQ(scan.points[0].reason, "within a factor 3 of x_UV");
  // x = 1 sits on the IR length.
  EXPECT_TRUE(scan.points[1].excluded);
  EXPECT_FALSE(scan.points[2].excluded);
  EXPECT_NEAR(scan.points[2].error, relative_error(scan.points[2].cmera, scan.points[2].qft), 0.0);
  EXPECT_EQ(scan.lambda, 1.0);
  ErrorScanConfig empty;
  EXPECT_THROW(run_error_scan(empty), DomainError);
}

TEST(ErrorScan, CircleSlope) {
  ErrorScanConfig cfg;
  cfg.geometry = Geometry::circle(1.0);
  cfg.m = 1.0;
  cfg.s_values = {2.0, 2.5, 3.0, 3.5};
  cfg.x_values = {0.5};
  const ErrorScan scan = run_error_scan(cfg);
  const SlopeFit f = error_slope_fit(scan, 0.5);
  EXPECT_NEAR(f.slope, -2.0, 0.2);
  EXPECT_EQ(f.points_used, 4);
}

TEST(ErrorTransfer, HoldsOnUnitCircle) {
  const double s = 4.0, m = 1.0;
  const double x_uv = std::exp(-s) / m;
  std::vector<double> x;
  for (int i = 0; i <= 10; ++i) x.push_back(std::min(0.5, x_uv + (0.5 - x_uv) * i / 10.0));
  const TransferReport r = check_error_transfer(Channel::PhiPhi, m, m, s, 1.0, x_uv, x);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.rows.size(), x.size());
  for (const TransferRow& row : r.rows) {
    EXPECT_LE(row.circle_error, row.image_bound + r.slack);
    EXPECT_GE(row.images, 1);
  }
  EXPECT_LE(r.max_circle_error, r.line_epsilon + r.slack);
  const std::vector<double> outside = {0.9};
  EXPECT_THROW(check_error_transfer(Channel::PhiPhi, m, m, s, 1.0, x_uv, outside), DomainError);
}

TEST(UvOnset, TracksUvLength) {
  OnsetConfig cfg;
  cfg.points = 64;
  const OnsetReport r3 = uv_onset_scan(Channel::PhiPhi, 0.1, 3.0, Geometry::line(), cfg);
  const OnsetReport r4 = uv_onset_scan(Channel::PhiPhi, 0.1, 4.0, Geometry::line(), cfg);
  EXPECT_NEAR(r3.x_uv, std::exp(-3.0) / 0.1, 1e-12);
  EXPECT_GE(r3.ratio, 0.5);
  EXPECT_LE(r3.ratio, 3.0);
  EXPECT_GE(r4.ratio, 0.5);
  EXPECT_LE(r4.ratio, 3.0);
  // One unit of scale moves the onset by about e^-1.
  EXPECT_NEAR(r4.x_onset / r3.x_onset, std::exp(-1.0), 0.3 * std::exp(-1.0));
}

TEST(UvOnset, UnentangledStateNeverConverges) {
  EXPECT_THROW(uv_onset_scan(Channel::PhiPhi, 1.0, 0.0, Geometry::line()), ConvergenceError);
  EXPECT_THROW(uv_onset_scan(Channel::PhiPhi, 1.0, 2.0, Geometry::circle(1.0)), DomainError);
}

}  // namespace
}  // namespace cmera
