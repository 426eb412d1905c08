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

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cmera/correlators.hpp"
#include "cmera/error.hpp"
#include "testing.hpp"

namespace cmera {
namespace {

constexpr double kPi = std::numbers::pi;

// Closed forms built on the quadrature oracle for K_nu.
double oracle_line(Channel c, double m, double x) {
  using testing::bessel_k_oracle;
  const double z = m * x;
  switch (c) {
    case Channel::PhiPhi:
      return bessel_k_oracle(0, z) / (2 * kPi);
    case Channel::PiPi:
      return m * m / (4 * kPi) * (bessel_k_oracle(0, z) - bessel_k_oracle(2, z));
    case Channel::DPhiDPhi:
      return -m * m / (2 * kPi) * (bessel_k_oracle(0, z) + bessel_k_oracle(1, z) / z);
  }
  return 0.0;
}

TEST(Channels, Names) {
  for (Channel c : {Channel::PhiPhi, Channel::PiPi, Channel::DPhiDPhi}) EXPECT_EQ(parse_channel(channel_name(c)), c);
  EXPECT_THROW(parse_channel("phipi"), ConfigError);
}

TEST(MomentumCorrelator, Kernels) {
  const BetaFunction q = BetaFunction::qft(0.6);
  const double k = 0.8;
  EXPECT_DOUBLE_EQ(momentum_correlator(q, Channel::PhiPhi, k), 0.5);
  EXPECT_DOUBLE_EQ(momentum_correlator(q, Channel::PiPi, k), 0.5);
  EXPECT_DOUBLE_EQ(momentum_correlator(q, Channel::DPhiDPhi, k), 0.32);
  // Unentangled state: flat in k.
  const BetaFunction c0 = BetaFunction::cmera(2.0, 0.0);
  EXPECT_DOUBLE_EQ(momentum_correlator(c0, Channel::PhiPhi, 37.0), 0.25);
}

TEST(SpectralDensity, RemainderDecays) {
  for (const BetaFunction& b : {BetaFunction::qft(1.0), BetaFunction::cmera(1.0, 3.0)}) {
    for (Channel c : {Channel::PhiPhi, Channel::PiPi, Channel::DPhiDPhi}) {
      const SpectralDensity sd(b, c);
      ASSERT_TRUE(sd.has_model());
      // The remainder after all five power terms falls off at least as k^-3.
      const double r1 = std::abs(sd.circle_remainder(1e3)), r2 = std::abs(sd.circle_remainder(2e3));
      EXPECT_LE(r2, r1 / 7.0 + 1e-18) << channel_name(c);
      EXPECT_DOUBLE_EQ(sd(0.7), momentum_correlator(b, c, 0.7));
    }
  }
  EXPECT_FALSE(SpectralDensity(BetaFunction::generic({1.0}, {1.0, 0.0, 1.0}), Channel::PhiPhi).has_model());
}

TEST(LineCorrelator, QftMatchesBesselClosedForm) {
  for (Channel c : {Channel::PhiPhi, Channel::PiPi, Channel::DPhiDPhi}) {
    for (double z : {0.1, 0.5, 1.0, 3.0, 10.0}) {
      const double m = 0.7, x = z / m;
      const double ref = oracle_line(c, m, x);
      EXPECT_NEAR(qft_line_closed(c, m, x), ref, 1e-10 * std::abs(ref)) << channel_name(c) << " z=" << z;
      EXPECT_NEAR(line_correlator_real(BetaFunction::qft(m), c, x).value, ref, 1e-6 * std::abs(ref))
          << channel_name(c) << " z=" << z;
    }
  }
}

TEST(LineCorrelator, DerivativeChannelIsMinusSecondDerivative) {
  const double m = 1.3, h = 1e-3;
  for (double x : {0.4, 1.0, 2.5}) {
    const double fd = (qft_line_closed(Channel::PhiPhi, m, x + h) - 2 * qft_line_closed(Channel::PhiPhi, m, x) +
                       qft_line_closed(Channel::PhiPhi, m, x - h)) /
                      (h * h);
    EXPECT_NEAR(qft_line_closed(Channel::DPhiDPhi, m, x), -fd, 1e-5 * std::abs(fd));
  }
}

TEST(LineCorrelator, CmeraApproachesQftBeyondUvLength) {
  const double m = 1.0;
  for (double s : {3.0, 4.0, 5.0}) {
    const double x = 1.0;  // many UV lengths, one IR length
    const double v = line_correlator_real(BetaFunction::cmera(m, s), Channel::PhiPhi, x).value;
    const double q = qft_line_closed(Channel::PhiPhi, m, x);
    EXPECT_LT(std::abs(v - q) / q, 2.0 * std::exp(-2 * s) * 10) << s;
  }
}

TEST(LineCorrelator, Errors) {
  EXPECT_THROW(line_correlator_real(BetaFunction::qft(1.0), Channel::PhiPhi, 0.0), DomainError);
  EXPECT_THROW(line_correlator_real(BetaFunction::qft(0.0), Channel::PhiPhi, 1.0), DomainError);
  EXPECT_THROW(line_correlator_real(BetaFunction::generic({1.0}, {1.0}), Channel::PhiPhi, 1.0), DomainError);
  EXPECT_THROW(qft_line_closed(Channel::PhiPhi, 1.0, -1.0), DomainError);
}

TEST(Coincident, LineClassification) {
  EXPECT_EQ(line_coincident(BetaFunction::qft(1.0), Channel::PhiPhi).kind, CoincidentKind::UvDivergent);
  EXPECT_EQ(line_coincident(BetaFunction::qft(1.0), Channel::PiPi).kind, CoincidentKind::UvDivergent);
  // Plateau oracle: (1/pi) int_0^inf (C(k) - C(inf)) dk with k = L tan(t).
  const double lambda = 1.0, s = 2.0, a = std::exp(-s);
  const auto integrand = [&](double t) {
    if (t >= kPi / 2) return (1 / a - a) / 4;
    const double k = lambda * std::tan(t), sec = 1 / std::cos(t);
    const double c = std::sqrt((a * a * k * k + lambda * lambda) / (k * k + lambda * lambda)) / (2 * lambda);
    return (c - a / (2 * lambda)) * lambda * sec * sec;
  };
  const double ref = testing::simpson(integrand, 0.0, kPi / 2, 20000) / kPi;
  const CoincidentReport r = line_coincident(BetaFunction::cmera(lambda, s), Channel::PhiPhi);
  EXPECT_EQ(r.kind, CoincidentKind::Plateau);
  EXPECT_NEAR(r.value, ref, 1e-9 * ref);
  // The plateau is the x -> 0+ limit of the real-space correlator.
  const double near = line_correlator_real(BetaFunction::cmera(lambda, s), Channel::PhiPhi, 1e-4).value;
  EXPECT_NEAR(near, r.value, 1e-3 * r.value);
}

TEST(CircleCorrelator, RoutesAgree) {
  const Geometry c = Geometry::circle(1.0);
  for (const BetaFunction& b : {BetaFunction::qft(1.0, c), BetaFunction::cmera(1.0, 3.0, c)}) {
    for (Channel ch : {Channel::PhiPhi, Channel::PiPi}) {
      for (double x : {0.05, 0.3, 0.5, 0.95}) {
        const double ms = circle_correlator_modesum(b, ch, x).value;
        const double is = circle_correlator_imagesum(b, ch, x).value;
        EXPECT_NEAR(ms, is, 1e-6 * std::abs(is)) << b.source_name() << " " << channel_name(ch) << " x=" << x;
      }
    }
  }
}

TEST(CircleCorrelator, WideCircleIsTheLine) {
  const double m = 1.0, lc = 40.0;
  const BetaFunction b = BetaFunction::qft(m, Geometry::circle(lc));
  for (double x : {0.5, 1.0, 3.0}) {
    const double ref = qft_line_closed(Channel::PhiPhi, m, x);
    EXPECT_NEAR(circle_correlator_modesum(b, Channel::PhiPhi, x).value, ref, 1e-6 * ref) << x;
  }
}

TEST(CircleCorrelator, TruncatedSumDivergesLogarithmically) {
  // C(k_n) = 1 / (2 |k_n|) for m -> 0: each decade of modes adds ln(10)/(2 pi).
  const BetaFunction b = BetaFunction::qft(1e-6, Geometry::circle(1.0));
  const double d = circle_correlator_truncated(b, Channel::PhiPhi, 0.0, 100000) -
                   circle_correlator_truncated(b, Channel::PhiPhi, 0.0, 10000);
  EXPECT_NEAR(d, std::log(10.0) / (2 * kPi), 1e-4);
  EXPECT_THROW(circle_correlator_modesum(b, Channel::PhiPhi, 0.0), UvDivergence);
  EXPECT_EQ(circle_coincident(b, Channel::PhiPhi).kind, CoincidentKind::UvDivergent);
  EXPECT_EQ(circle_coincident(BetaFunction::cmera(1.0, 2.0, Geometry::circle(1.0)), Channel::PhiPhi).kind,
            CoincidentKind::Plateau);
}

TEST(CircleCorrelator, Errors) {
  EXPECT_THROW(circle_correlator_modesum(BetaFunction::qft(1.0), Channel::PhiPhi, 0.3), DomainError);
  const LineEvaluator f = [](double) { return CorrelatorValue{1.0, 0.0}; };
  EXPECT_THROW(circle_correlator_imagesum(f, 0.0, 1.0, 0.3), PolicyError);
  ImageSumConfig tight;
  tight.max_images = 2;
  const LineEvaluator slow = [](double y) { return CorrelatorValue{std::exp(-0.01 * std::abs(y)), 0.0}; };
  EXPECT_THROW(circle_correlator_imagesum(slow, 0.01, 1.0, 0.3, tight), PolicyError);
}

TEST(CorrelatorTable, MatchesPointwise) {
  const std::vector<double> x = {0.1, 0.5, 2.0, 7.0};
  TableConfig cfg;
  cfg.threads = 2;
  const BetaFunction b = BetaFunction::cmera(0.5, 3.0);
  const CorrelatorTable t = build_correlator_table(b, Channel::PiPi, x, cfg);
  ASSERT_EQ(t.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(t.value[i], line_correlator_real(b, Channel::PiPi, x[i]).value);
  }
  EXPECT_EQ(t.source, "cmera");
  const std::vector<double> bad = {0.5, -0.1};
  EXPECT_THROW(build_correlator_table(b, Channel::PiPi, bad, cfg), DomainError);
}

TEST(ParallelFor, CoversAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 3, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 2, [](std::size_t i) { if (i == 7) throw DomainError("boom"); }), DomainError);
}

TEST(CorrelatorProperty, QftLineAgainstOracle) {
  testing::for_all("qft line", 25, 81, [](testing::Gen& g, std::ostringstream& t) {
    const double m = g.log_uniform(0.05, 5.0), z = g.log_uniform(0.1, 10.0);
    const Channel c = g.coin() ? Channel::PhiPhi : Channel::PiPi;
    t << "m=" << m << " mx=" << z << " " << channel_name(c);
    const double ref = oracle_line(c, m, z / m);
    EXPECT_NEAR(line_correlator_real(BetaFunction::qft(m), c, z / m).value, ref, 1e-6 * std::abs(ref));
  });
}

TEST(CorrelatorProperty, CircleReflectionAndRoutes) {
  testing::for_all("circle", 12, 82, [](testing::Gen& g, std::ostringstream& t) {
    const double lc = g.uniform(0.5, 2.0), m = g.log_uniform(0.3, 3.0), x = g.uniform(0.05, 0.95) * lc;
    const bool cm = g.coin();
    const double s = g.uniform(2.0, 4.0);
    const Channel c = g.coin() ? Channel::PhiPhi : Channel::PiPi;
    t << "lc=" << lc << " m=" << m << " x=" << x << " cmera=" << cm << " s=" << s << " " << channel_name(c);
    const Geometry geom = Geometry::circle(lc);
    const BetaFunction b = cm ? BetaFunction::cmera(m, s, geom) : BetaFunction::qft(m, geom);
    const double v = circle_correlator_modesum(b, c, x).value;
    EXPECT_NEAR(circle_correlator_modesum(b, c, lc - x).value, v, 1e-9 * std::abs(v) + 1e-13);
    EXPECT_NEAR(circle_correlator_imagesum(b, c, x).value, v, 1e-6 * std::abs(v));
  });
}

}  // namespace
}  // namespace cmera
