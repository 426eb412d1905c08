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
#include <limits>
#include <numbers>

#include "cmera/error.hpp"
#include "cmera/profiles.hpp"
#include "testing.hpp"

namespace cmera {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

TEST(MagicProfile, MomentumValues) {
  EXPECT_EQ(magic_profile_momentum(0.0, 2.0, 3.0), 0.0);
  for (double lambda : {0.3, 1.0, 7.0}) EXPECT_NEAR(magic_profile_momentum(lambda, lambda, 0.0), -0.25, 1e-16);
  EXPECT_NEAR(magic_profile_momentum(1e12, 1.0, 2.0), -0.5, 1e-15);
  EXPECT_NEAR(magic_profile_momentum(0.0, 2.0, 0.0, Picture::FixedScale), 0.5, 1e-16);
}

TEST(MagicProfile, RealSpaceValues) {
  const ProfileValue v = magic_profile_real(0.0, 2.0, 0.0);
  EXPECT_DOUBLE_EQ(v.smooth, 0.5);
  EXPECT_DOUBLE_EQ(v.delta_coeff, -0.5);
  const double lambda = 1.7, s = 0.8;
  const double x = std::log(2.0) / (std::exp(s) * lambda);
  EXPECT_NEAR(magic_profile_real(x, lambda, s).smooth, std::exp(s) * lambda / 8.0, 1e-15);
  EXPECT_EQ(magic_profile_real(0.3, 1.0, 0.0, Picture::FixedScale).delta_coeff, 0.0);
}

TEST(MagicProfile, FourierConsistency) {
  // g(k) = 2 int_0^inf cos(kx) g_smooth(x) dx + delta_coeff, by Simpson on a
  // range where the smooth part has decayed below 1e-17.
  const double lambda = 1.3, s = 0.7;
  const double rate = std::exp(s) * lambda;
  const double delta = magic_profile_real(0.0, lambda, s).delta_coeff;
  for (double t = -1.0; t <= 1.0; t += 0.125) {
    const double k = 10.0 * rate * t;
    const double ft = 2.0 * testing::simpson(
                                [&](double x) { return std::cos(k * x) * magic_profile_real(x, lambda, s).smooth; },
                                0.0, 40.0 / rate, 20000);
    EXPECT_NEAR(ft + delta, magic_profile_momentum(k, lambda, s), 1e-8) << k;
  }
}

TEST(EntanglingProfile, Validation) {
  EXPECT_THROW(EntanglingProfile::magic(0.0, 1.0), DomainError);
  EXPECT_THROW(EntanglingProfile::magic(1.0, -0.1), DomainError);
  EXPECT_THROW(EntanglingProfile::constant(std::nan(""), 1.0), DomainError);
  EXPECT_THROW(parse_picture("sideways"), ConfigError);
  EXPECT_EQ(parse_picture("fixed_scale"), Picture::FixedScale);
  EXPECT_EQ(picture_name(Picture::Rescaled), "rescaled");
}

TEST(EntanglingProfile, ConstantKernelIsPureDelta) {
  const EntanglingProfile c = EntanglingProfile::constant(-0.3, 1.0);
  EXPECT_EQ(c.real(0.4).smooth, 0.0);
  EXPECT_EQ(c.real(0.4).delta_coeff, -0.3);
  EXPECT_EQ(c.momentum(12.0), -0.3);
  EXPECT_EQ(c.generator(3.0, 5.0), -0.3);
}

TEST(WrappedProfile, ClosedFormValue) {
  const WrappedProfile w = wrap_profile(EntanglingProfile::magic(2.0, 0.0), Geometry::circle(1.0));
  EXPECT_NEAR(w.closed_form(0.5), 0.5 / std::sinh(1.0), 1e-15);
  EXPECT_NEAR(w.closed_form(0.5), 0.425459064, 1e-9);
  const auto g = [](double y) { return 0.5 * std::exp(-2.0 * std::abs(y)); };
  EXPECT_NEAR(testing::brute_image_sum(g, 0.5, 1.0, 30), w.closed_form(0.5), 1e-13);
  EXPECT_NEAR(w.image_sum(0.5), w.closed_form(0.5), 1e-13);
  EXPECT_EQ(w.delta_coeff(), -0.5);
}

TEST(WrappedProfile, Periodicity) {
  const WrappedProfile w = wrap_profile(EntanglingProfile::magic(2.0, 1.0), Geometry::circle(1.0));
  EXPECT_NEAR(w(0.0).smooth, w(1.0 - 1e-13).smooth, 1e-10);
  EXPECT_NEAR(w.closed_form(0.25), w.closed_form(1.25), 1e-13);
  EXPECT_NEAR(w.closed_form(0.25), w.closed_form(0.75), 1e-13);
}

TEST(WrappedProfile, DiscreteTransformMatchesSampledMomentum) {
  const WrappedProfile w = wrap_profile(EntanglingProfile::magic(2.0, 0.0), Geometry::circle(1.0));
  for (int n = -8; n <= 8; ++n) {
    const double k = 2.0 * kPi * n;
    EXPECT_NEAR(w.momentum_by_quadrature(n, 1e-10), magic_profile_momentum(k, 2.0, 0.0), 1e-8) << n;
    EXPECT_EQ(w.momentum(n), magic_profile_momentum(k, 2.0, 0.0));
  }
}

TEST(WrappedProfile, TorusFactorizes) {
  const EntanglingProfile base = EntanglingProfile::magic(2.0, 0.0);
  const WrappedProfile t = wrap_profile_torus(base, Geometry::torus(1.0, 1.0));
  const double one = 0.5 / std::sinh(1.0);
  EXPECT_NEAR(t.closed_form(0.5, 0.5), one * one, 1e-14);
  const WrappedProfile a = wrap_profile(base, Geometry::circle(1.0));
  const WrappedProfile t2 = wrap_profile_torus(base, Geometry::torus(1.0, 2.5));
  const WrappedProfile b = wrap_profile(base, Geometry::circle(2.5));
  for (double x : {0.1, 0.45, 0.8}) {
    for (double y : {0.3, 1.2, 2.2}) {
      EXPECT_NEAR(t2.closed_form(x, y), a.closed_form(x) * b.closed_form(y), 1e-13);
      EXPECT_NEAR(t2.image_sum(x, y), t2.closed_form(x, y), 1e-12);
      EXPECT_NEAR(t2(x + 1.0, y), t2(x, y), 1e-12);
      EXPECT_NEAR(t2(x, y + 2.5), t2(x, y), 1e-12);
    }
  }
}

TEST(WrappedProfile, GeometryChecks) {
  const EntanglingProfile base = EntanglingProfile::magic(1.0, 0.0);
  EXPECT_THROW(wrap_profile(base, Geometry::line()), DomainError);
  EXPECT_THROW(wrap_profile_torus(base, Geometry::circle(1.0)), DomainError);
  const WrappedProfile c = wrap_profile(EntanglingProfile::constant(0.1, 1.0), Geometry::circle(1.0));
  EXPECT_FALSE(c.closed_form_available());
  EXPECT_THROW(c.closed_form(0.2), DomainError);
  EXPECT_EQ(c(0.2).smooth, 0.0);
}

TEST(HalfLine, Examples) {
  const EntanglingProfile base = EntanglingProfile::magic(1.0, 0.0);
  const HalfLineProfile h = fold_profile_halfline(base, BoundaryCondition::Neumann);
  const auto g = [&](double x) { return magic_profile_real(x, 1.0, 0.0).smooth; };
  EXPECT_NEAR(h(0.3, 0.7).smooth, 0.5 * (g(0.4) + g(1.0)), 1e-16);
  for (double x : {0.1, 0.5, 2.0}) EXPECT_NEAR(h(x, x).smooth, 0.5 * (g(0.0) + g(2.0 * x)), 1e-16);
  EXPECT_EQ(h(0.3, 0.7).smooth, h(0.7, 0.3).smooth);
  const HalfLineProfile d = fold_profile_halfline(base, BoundaryCondition::Dirichlet);
  EXPECT_NEAR(d(0.3, 0.7).smooth, 0.5 * (g(0.4) - g(1.0)), 1e-16);
  EXPECT_THROW(h(0.0, 1.0), DomainError);
}

TEST(ProfileProperty, PictureConsistency) {
  testing::for_all("picture", 500, 61, [](testing::Gen& g, std::ostringstream& t) {
    const double lambda = g.log_uniform(1e-2, 1e2), s = g.uniform(0.0, 10.0);
    const double k = (g.coin() ? 1 : -1) * g.log_uniform(1e-4, 1e6);
    t << "lambda=" << lambda << " s=" << s << " k=" << k;
    const double rescaled = magic_profile_momentum(k, lambda, s);
    EXPECT_EQ(rescaled, magic_profile_momentum(std::exp(-s) * k, lambda, 0.0, Picture::FixedScale) - 0.5);
    EXPECT_NEAR(magic_profile_momentum_reduced(k, lambda, s), rescaled, 4 * kEps);
    EXPECT_LE(rescaled, 0.0);
    EXPECT_GE(rescaled, -0.5);
  });
}

TEST(ProfileProperty, WrappedClosedFormWithinPolicy) {
  testing::for_all("wrap closed form", 40, 62, [](testing::Gen& g, std::ostringstream& t) {
    const double lambda = g.log_uniform(0.1, 10.0), s = g.uniform(0.0, 3.0), lc = g.log_uniform(0.2, 5.0);
    ImageSumPolicy p;
    p.tolerance = g.log_uniform(1e-13, 1e-6);
    t << "lambda=" << lambda << " s=" << s << " lc=" << lc << " tol=" << p.tolerance;
    const WrappedProfile w = wrap_profile(EntanglingProfile::magic(lambda, s), Geometry::circle(lc), p);
    const double r = std::exp(s) * lambda;
    for (int i = 0; i < 20; ++i) {
      const double x = g.uniform(0.0, lc);
      const double closed = w.closed_form(x);
      EXPECT_LE(std::abs(w.image_sum(x) - closed), p.tolerance + 16 * kEps * closed);
      EXPECT_NEAR(closed, 0.25 * r * std::cosh(r * (lc / 2 - x)) / std::sinh(r * lc / 2), 1e-12 * closed);
    }
  });
}

TEST(ProfileProperty, SamplingIdentityOnRandomCircles) {
  testing::for_all("profile sampling", 6, 63, [](testing::Gen& g, std::ostringstream& t) {
    const double lambda = g.uniform(0.5, 3.0), s = g.uniform(0.0, 1.0), lc = g.uniform(0.5, 2.0);
    t << "lambda=" << lambda << " s=" << s << " lc=" << lc;
    const WrappedProfile w = wrap_profile(EntanglingProfile::magic(lambda, s), Geometry::circle(lc));
    for (int n = 0; n <= 4; ++n) EXPECT_NEAR(w.momentum_by_quadrature(n, 1e-10), w.momentum(n), 1e-8) << n;
  });
}

TEST(ProfileProperty, HalfLineFormsAgree) {
  testing::for_all("fold", 300, 64, [](testing::Gen& g, std::ostringstream& t) {
    const double lambda = g.log_uniform(0.1, 10.0), s = g.uniform(0.0, 4.0);
    const double x = g.log_uniform(1e-4, 10.0), y = g.log_uniform(1e-4, 10.0);
    const BoundaryCondition bc = g.coin() ? BoundaryCondition::Neumann : BoundaryCondition::Dirichlet;
    t << "lambda=" << lambda << " s=" << s << " x=" << x << " y=" << y;
    const HalfLineProfile h = fold_profile_halfline(EntanglingProfile::magic(lambda, s), bc);
    EXPECT_NO_THROW(h(x, y));
    EXPECT_NEAR(h.four_term(x, y), h.reduced(x, y), 8 * kEps * h.base().real(0.0).smooth);
    EXPECT_EQ(h(x, y).smooth, h(y, x).smooth);
  });
}

}  // namespace
}  // namespace cmera
