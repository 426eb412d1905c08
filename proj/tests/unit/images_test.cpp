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

#include <cmath>
#include <numbers>

#include "cmera/error.hpp"
#include "cmera/images.hpp"
#include "cmera/special_functions.hpp"
#include "testing.hpp"

namespace cmera {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Wrap, ExponentialClosedForm) {
  const PeriodicFunction f = wrap(TestFunction::exponential(), 1.0);
  EXPECT_NEAR(f(0.5), 1.0 / std::sinh(0.5), 1e-12);
  EXPECT_NEAR(f(0.5), 1.919034751, 1e-9);
}

TEST(Wrap, ReflectionSymmetry) {
  const PeriodicFunction f = wrap(TestFunction::gaussian(), 1.3);
  for (double x = 0.0; x <= 1.3; x += 0.1) EXPECT_NEAR(f(x), f(1.3 - x), 1e-14) << x;
}

TEST(Wrap, WideCircleLimit) {
  const TestFunction g = TestFunction::gaussian();
  const PeriodicFunction f = wrap(g, 10.0);
  for (double x = 0.0; x <= 3.0; x += 0.25) EXPECT_NEAR(f(x), g.real(x), 1e-12) << x;
}

TEST(Wrap, PeriodicByConstruction) {
  const PeriodicFunction f = wrap(TestFunction::exponential(), 0.7);
  for (double x : {0.1, 0.33, 0.6}) {
    EXPECT_NEAR(f(x + 0.7), f(x), 1e-14);
    EXPECT_NEAR(f(x - 2.1), f(x), 1e-14);
  }
}

TEST(Wrap, MatchesBruteForce) {
  const auto e = [](double y) { return std::exp(-std::abs(y)); };
  const PeriodicFunction f = wrap(TestFunction::exponential(), 0.9);
  for (double x = 0.05; x < 0.9; x += 0.1) EXPECT_NEAR(f(x), testing::brute_image_sum(e, x, 0.9, 200), 1e-12);
}

TEST(ImageSumPolicy, TruncationOrderHonoursBound) {
  const DecayCertificate cert{1.0, 1.0};
  ImageSumPolicy p;
  for (double l : {0.1, 0.5, 1.0, 3.0}) {
    const int n = p.truncation_order(cert, l);
    EXPECT_LE(ImageSumPolicy::tail_bound(cert, l, n), p.tolerance);
    // The bound includes the one-sided geometric form.
    EXPECT_GE(ImageSumPolicy::tail_bound(cert, l, n), std::exp(-(n - 1) * l) / (1.0 - std::exp(-l)) * 0.999);
    if (n > 1) {
      EXPECT_GT(ImageSumPolicy::tail_bound(cert, l, n - 1), p.tolerance);
    }
  }
}

TEST(ImageSumPolicy, Errors) {
  ImageSumPolicy p;
  p.max_images = 5;
  EXPECT_THROW(p.truncation_order({1.0, 1.0}, 0.01), PolicyError);
  EXPECT_THROW(ImageSumPolicy{}.truncation_order({0.0, 1.0}, 1.0), PolicyError);
  p.tolerance = 0.0;
  EXPECT_THROW(p.validate(), DomainError);
  EXPECT_THROW(wrap(TestFunction::exponential(), -1.0), DomainError);
}

TEST(SamplingTheorem, ExponentialUnitCircle) {
  const SamplingReport r = verify_sampling_theorem(TestFunction::exponential(), 1.0, 8, 1e-10);
  ASSERT_EQ(r.rows.size(), 17u);
  EXPECT_LT(r.max_abs_dev, 1e-8);
  for (const auto& row : r.rows) EXPECT_NEAR(row.f_kn, 2.0 / (1.0 + std::pow(2.0 * kPi * row.n, 2)), 1e-15);
}

TEST(SamplingTheorem, ZeroModeIsTotalIntegral) {
  for (const TestFunction& f : {TestFunction::exponential(), TestFunction::gaussian()}) {
    const SamplingReport r = verify_sampling_theorem(f, 0.8, 0, 1e-11);
    ASSERT_EQ(r.rows.size(), 1u);
    const double total = f.id == "exponential" ? 2.0 : std::sqrt(kPi);
    EXPECT_NEAR(r.rows[0].f_c_n, total, 1e-9) << f.id;
  }
}

TEST(SamplingTheorem, Errors) {
  TestFunction f = TestFunction::exponential();
  f.momentum = nullptr;
  EXPECT_THROW(verify_sampling_theorem(f, 1.0, 4, 1e-10), DomainError);
  EXPECT_THROW(verify_sampling_theorem(TestFunction::exponential(), 1.0, -1, 1e-10), DomainError);
  EXPECT_THROW(verify_sampling_theorem(TestFunction::exponential(), 1.0, 4, 0.0), DomainError);
}

TEST(Wrap2d, SeparableExponentialFactorizes) {
  TestFunction2D f{"exp2", [](double x, double y) { return std::exp(-std::abs(x) - std::abs(y)); }, {1.0, 1.0}};
  const PeriodicFunction2D w = wrap_2d(f, 1.0, 1.5);
  for (double x : {0.1, 0.5, 0.9}) {
    for (double y : {0.2, 0.75, 1.4}) {
      EXPECT_NEAR(w(x, y), wrapped_exponential_sum(x, 1.0) * wrapped_exponential_sum(y, 1.5), 1e-13 * w(x, y));
      EXPECT_NEAR(w(x + 1.0, y), w(x, y), 1e-13);
      EXPECT_NEAR(w(x, y - 1.5), w(x, y), 1e-13);
    }
  }
}

TEST(Wrap2d, ZeroModeDoubleIntegral) {
  // int over the cell of the wrapped function = int over the plane = 4.
  TestFunction2D f{"exp2", [](double x, double y) { return std::exp(-std::abs(x) - std::abs(y)); }, {1.0, 1.0}};
  const PeriodicFunction2D w = wrap_2d(f, 1.0, 1.0);
  const double v = testing::simpson(
      [&](double x) { return testing::simpson([&](double y) { return w(x, y); }, 0.0, 1.0, 400); }, 0.0, 1.0, 400);
  // Simpson across the cusps at the cell edges converges at O(h^2).
  EXPECT_NEAR(v, 4.0, 1e-5);
}

TEST(WrapProperty, TailBoundHonesty) {
  testing::for_all("tail honesty", 60, 51, [](testing::Gen& g, std::ostringstream& t) {
    const double l = g.log_uniform(0.05, 5.0);
    const double tol = g.log_uniform(1e-13, 1e-6);
    const bool gauss = g.coin();
    t << "l=" << l << " tol=" << tol << " gaussian=" << gauss;
    const TestFunction f = gauss ? TestFunction::gaussian() : TestFunction::exponential();
    ImageSumPolicy p;
    p.tolerance = tol;
    const PeriodicFunction w = wrap(f, l, p);
    for (int i = 0; i < 5; ++i) {
      const double x = g.uniform(0.0, l);
      const double doubled = testing::brute_image_sum(f.real, x, l, 2 * w.images());
      EXPECT_LE(std::abs(w(x) - doubled), tol + 1e-14 * std::abs(doubled));
    }
  });
}

TEST(WrapProperty, ResynthesisRoundTrip) {
  // Gaussian spectra decay fast, so a modest mode window reproduces the
  // wrapped function to rounding.
  testing::for_all("round trip", 40, 52, [](testing::Gen& g, std::ostringstream& t) {
    const double l = g.uniform(0.5, 4.0);
    const double x = g.uniform(0.0, l);
    t << "l=" << l << " x=" << x;
    const TestFunction f = TestFunction::gaussian();
    const double direct = wrap(f, l)(x);
    EXPECT_NEAR(resynthesize_from_samples(f, l, x, 64), direct, 1e-11);
  });
}

TEST(WrapProperty, ExponentialResynthesisConvergesSlowly) {
  // f(k) = 2/(1+k^2): truncating at |n| <= N leaves a tail ~ l / (pi^2 N).
  const TestFunction f = TestFunction::exponential();
  const double l = 1.0, x = 0.3;
  const double direct = wrap(f, l)(x);
  const double e1 = std::abs(resynthesize_from_samples(f, l, x, 100) - direct);
  const double e2 = std::abs(resynthesize_from_samples(f, l, x, 1000) - direct);
  EXPECT_LT(e2, e1);
  EXPECT_LT(e2, 1e-4);
}

TEST(SamplingTheoremProperty, RandomPeriods) {
  testing::for_all("sampling identity", 8, 53, [](testing::Gen& g, std::ostringstream& t) {
    const double l = g.uniform(0.4, 3.0);
    t << "l=" << l;
    const TestFunction f = g.coin() ? TestFunction::gaussian() : TestFunction::exponential();
    EXPECT_LT(verify_sampling_theorem(f, l, 6, 1e-10).max_abs_dev, 1e-8);
  });
}

}  // namespace
}  // namespace cmera
