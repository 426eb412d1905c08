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

#include "cmera/correlators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "cmera/error.hpp"
#include "cmera/images.hpp"
#include "cmera/kernels.hpp"
#include "cmera/special_functions.hpp"

namespace cmera {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t idx(int p) { return static_cast<std::size_t>(2 - p); }

}  // namespace

std::string channel_name(Channel c) {
  switch (c) {
    case Channel::PhiPhi:
      return "phiphi";
    case Channel::PiPi:
      return "pipi";
    case Channel::DPhiDPhi:
      return "dphidphi";
  }
  return "?";
}

Channel parse_channel(const std::string& name) {
  if (name == "phiphi") return Channel::PhiPhi;
  if (name == "pipi") return Channel::PiPi;
  if (name == "dphidphi") return Channel::DPhiDPhi;
  throw ConfigError("unknown channel '" + name + "' (expected phiphi, pipi or dphidphi)");
}

double momentum_correlator(const BetaFunction& beta, Channel channel, double k) {
  const double b = beta(k);
  if (!(b > 0.0)) throw DomainError("momentum_correlator: beta(k) = 0 at k = " + describe(k));
  switch (channel) {
    case Channel::PhiPhi:
      return 0.5 / b;
    case Channel::PiPi:
      return 0.5 * b;
    case Channel::DPhiDPhi:
      return 0.5 * k * k / b;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Spectral density. With a = e^{-s}, A = sqrt(k^2 + L^2), B = sqrt(a^2 k^2 + L^2)
// the cMERA densities are B / (2 L A) and L A / (2 B); QFT uses w = sqrt(k^2 + m^2).

SpectralDensity::SpectralDensity(const BetaFunction& beta, Channel channel) : beta_(beta), channel_(channel) {
  if (beta.kind() == BetaFunction::Kind::Cmera) {
    has_model_ = true;
    const double l = beta.lambda();
    const double a = std::exp(-beta.s());
    const double phi_m4 = 0.5 * a * l * l * l * (0.375 - 0.25 / (a * a) - 0.125 / (a * a * a * a));
    switch (channel) {
      case Channel::PhiPhi:
        c_[idx(0)] = 0.5 * a / l;
        c_[idx(-2)] = 0.25 * l * (1.0 / a - a);
        break;
      case Channel::PiPi:
        c_[idx(0)] = 0.5 * l / a;
        c_[idx(-2)] = 0.25 * l * l * l * (1.0 - 1.0 / (a * a)) / a;
        break;
      case Channel::DPhiDPhi:
        c_[idx(2)] = 0.5 * a / l;
        c_[idx(0)] = 0.25 * l * (1.0 / a - a);
        c_[idx(-2)] = phi_m4;
        break;
    }
  } else if (beta.kind() == BetaFunction::Kind::Qft) {
    has_model_ = true;
    const double m2 = beta.mass() * beta.mass();
    switch (channel) {
      case Channel::PhiPhi:
        c_[idx(-1)] = 0.5;
        break;
      case Channel::PiPi:
        c_[idx(1)] = 0.5;
        c_[idx(-1)] = 0.25 * m2;
        break;
      case Channel::DPhiDPhi:
        c_[idx(1)] = 0.5;
        c_[idx(-1)] = -0.25 * m2;
        break;
    }
  }
}

double SpectralDensity::operator()(double k) const { return momentum_correlator(beta_, channel_, k); }

namespace {

struct CmeraParts {
  double a, l, A, B;
};

CmeraParts cmera_parts(const BetaFunction& beta, double k) {
  const double a = std::exp(-beta.s());
  const double l = beta.lambda();
  return {a, l, std::sqrt(k * k + l * l), std::sqrt(a * a * k * k + l * l)};
}

// C_phiphi - c0, free of cancellation.
double cmera_phi_line(const CmeraParts& p) {
  return p.l * (1.0 - p.a * p.a) / (2.0 * p.A * (p.B + p.a * p.A));
}

// a k^2 - A B, free of cancellation.
double cmera_akk_minus_ab(const CmeraParts& p, double k) {
  const double k2 = k * k;
  const double l2 = p.l * p.l;
  return -(l2 * k2 * (1.0 + p.a * p.a) + l2 * l2) / (p.a * k2 + p.A * p.B);
}

// C_phiphi - c0 - c_{-2} / k^2.
double cmera_phi_circle(const CmeraParts& p, double k) {
  const double k2 = k * k;
  const double n = cmera_akk_minus_ab(p, k) - p.a * p.l * p.l;
  return p.l * (1.0 - p.a * p.a) * n / (4.0 * p.a * k2 * p.A * (p.B + p.a * p.A));
}

double cmera_pi_line(const CmeraParts& p) {
  return 0.5 * p.l * p.l * p.l * (p.a * p.a - 1.0) / ((p.a * p.A + p.B) * p.a * p.B);
}

double cmera_pi_circle(const CmeraParts& p, double k) {
  const double k2 = k * k;
  const double n = p.a * cmera_akk_minus_ab(p, k) - p.l * p.l;
  return p.l * p.l * p.l * (p.a * p.a - 1.0) * n / (4.0 * p.a * p.a * p.a * k2 * p.B * (p.a * p.A + p.B));
}

}  // namespace

double SpectralDensity::line_remainder(double k) const {
  if (beta_.kind() == BetaFunction::Kind::Cmera) {
    const CmeraParts p = cmera_parts(beta_, k);
    switch (channel_) {
      case Channel::PhiPhi:
        return cmera_phi_line(p);
      case Channel::PiPi:
        return cmera_pi_line(p);
      case Channel::DPhiDPhi:
        return k == 0.0 ? -c_[idx(0)] : k * k * cmera_phi_circle(p, k);
    }
  } else if (beta_.kind() == BetaFunction::Kind::Qft) {
    const double m = beta_.mass();
    const double w = std::sqrt(k * k + m * m);
    switch (channel_) {
      case Channel::PhiPhi:
        return 0.5 / w;
      case Channel::PiPi:
        return 0.5 * m * m / (w + k);
      case Channel::DPhiDPhi:
        return -0.5 * k * m * m / (w * (k + w));
    }
  }
  return (*this)(k);
}

double SpectralDensity::circle_remainder(double k) const {
  if (beta_.kind() == BetaFunction::Kind::Cmera) {
    const CmeraParts p = cmera_parts(beta_, k);
    switch (channel_) {
      case Channel::PhiPhi:
        return cmera_phi_circle(p, k);
      case Channel::PiPi:
        return cmera_pi_circle(p, k);
      case Channel::DPhiDPhi:
        return k * k * cmera_phi_circle(p, k) - c_[idx(-2)] / (k * k);
    }
  } else if (beta_.kind() == BetaFunction::Kind::Qft) {
    const double m = beta_.mass();
    const double m2 = m * m;
    const double w = std::sqrt(k * k + m2);
    switch (channel_) {
      case Channel::PhiPhi:
        return -0.5 * m2 / (k * w * (k + w));
      case Channel::PiPi:
        return -0.25 * m2 * m2 / (k * (w + k) * (w + k));
      case Channel::DPhiDPhi:
        return 0.25 * m2 * m2 * (w + 2.0 * k) / (k * w * (k + w) * (k + w));
    }
  }
  return (*this)(k);
}

void SpectralDensity::line_remainder(std::span<const double> k, std::span<double> out) const {
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = line_remainder(k[i]);
}

double SpectralDensity::decay_rate() const {
  switch (beta_.kind()) {
    case BetaFunction::Kind::Cmera:
      return beta_.lambda();
    case BetaFunction::Kind::Qft:
      return beta_.mass();
    case BetaFunction::Kind::GenericQft:
      break;
  }
  return 0.0;
}

double SpectralDensity::feature_momentum() const {
  switch (beta_.kind()) {
    case BetaFunction::Kind::Cmera:
      return beta_.lambda() * std::exp(beta_.s());
    case BetaFunction::Kind::Qft:
      return beta_.mass();
    case BetaFunction::Kind::GenericQft:
      break;
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Line.

namespace {

void require_model(const SpectralDensity& sd) {
  if (!sd.has_model()) throw DomainError("real-space correlators need a cMERA or relativistic QFT source");
}

void require_positive_mass(const BetaFunction& beta) {
  if (beta.kind() == BetaFunction::Kind::Qft && !(beta.mass() > 0.0)) {
    throw DomainError("QFT real-space correlators need an explicit IR regulator mass m > 0");
  }
}

}  // namespace

CorrelatorValue line_correlator_real(const BetaFunction& beta, Channel channel, double x, const LineQuadConfig& cfg) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("line_correlator_real: x must be > 0");
  require_positive_mass(beta);
  const SpectralDensity sd(beta, channel);
  require_model(sd);

  quad::OscillatoryConfig oc;
  oc.tol.rel = cfg.quad_rel;
  oc.k_split = std::max(10.0 * sd.feature_momentum(), 20.0 / x);
  const quad::BatchFn f = [&sd](std::span<const double> k, std::span<double> out) { sd.line_remainder(k, out); };
  const quad::Estimate e = quad::cosine_transform(f, x, oc);

  CorrelatorValue r;
  r.value = e.value / kPi - sd.coeff(1) / (kPi * x * x);
  r.error = e.error / kPi;
  // abs_tol is measured against the natural size of the transform, |R| at
  // its feature momentum times that momentum.
  const double kf = sd.feature_momentum();
  const double scale = std::max(std::abs(sd.line_remainder(0.0)), std::abs(sd.line_remainder(kf))) * kf / kPi;
  const double target = std::max(cfg.abs_tol * scale, cfg.rel_tol * std::abs(r.value));
  if (!(r.error <= target)) {
    throw ConvergenceError("line_correlator_real: error estimate " + describe(r.error) + " above target " +
                           describe(target) + " at x = " + describe(x));
  }
  return r;
}

CoincidentReport line_coincident(const BetaFunction& beta, Channel channel, const LineQuadConfig& cfg) {
  require_positive_mass(beta);
  const SpectralDensity sd(beta, channel);
  require_model(sd);
  CoincidentReport rep;
  if (sd.coeff(1) != 0.0 || sd.coeff(-1) != 0.0) {
    rep.kind = CoincidentKind::UvDivergent;
    rep.reason = "momentum density has a k or 1/k tail: the coincident-point limit diverges";
    return rep;
  }
  const quad::BatchFn f = [&sd](std::span<const double> k, std::span<double> out) { sd.line_remainder(k, out); };
  const double split = 10.0 * sd.feature_momentum();
  quad::Tolerance tol;
  tol.max_subdivisions = 2000;
  tol.rel = cfg.quad_rel;
  const quad::Estimate head = quad::integrate(f, 0.0, split, tol);
  const quad::Estimate tail = quad::integrate_semi_infinite(f, split, tol);
  rep.kind = CoincidentKind::Plateau;
  rep.value = (head.value + tail.value) / kPi;
  rep.error = (head.error + tail.error) / kPi;
  rep.reason = "finite plateau (terms supported at x = 0 excluded)";
  if (rep.error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(rep.value))) {
    throw ConvergenceError("line_coincident: plateau integral did not converge");
  }
  return rep;
}

double qft_line_closed(Channel channel, double m, double x) {
  if (!(m > 0.0)) throw DomainError("qft_line_closed: m must be > 0");
  if (!(x > 0.0)) throw DomainError("qft_line_closed: x must be > 0");
  const double mx = m * x;
  const BesselK01 k = bessel_k01(mx);
  switch (channel) {
    case Channel::PhiPhi:
      return k.k0 / (2.0 * kPi);
    case Channel::PiPi:
      return -m * k.k1 / (2.0 * kPi * x);
    case Channel::DPhiDPhi:
      return -(m * m / (2.0 * kPi)) * (k.k0 + k.k1 / mx);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Circle.

namespace {

// sum_{n >= 1} n^p cos(n theta) for theta in (0, 2 pi), Abel-regularised for
// p >= 0. At theta = 0 only p in {2, 0, -2} are finite.
double lattice_sum(int p, double theta) {
  const double half = std::sin(0.5 * theta);
  switch (p) {
    case 2:
      return 0.0;
    case 1:
      return -0.25 / (half * half);
    case 0:
      return -0.5;
    case -1:
      return -std::log(2.0 * half);
    case -2:
      return kPi * kPi / 6.0 - 0.5 * kPi * theta + 0.25 * theta * theta;
    default:
      break;
  }
  throw DomainError("lattice_sum: unsupported power");
}

int remainder_order(const BetaFunction& beta) { return beta.kind() == BetaFunction::Kind::Qft ? 3 : 4; }

}  // namespace

CorrelatorValue circle_correlator_modesum(const BetaFunction& beta, Channel channel, double x,
                                          const ModeSumConfig& cfg) {
  const Geometry& geom = beta.geometry();
  if (!geom.is_circle()) throw DomainError("circle_correlator_modesum: beta must live on a circle");
  require_positive_mass(beta);
  const SpectralDensity sd(beta, channel);
  require_model(sd);

  const double lc = geom.circle_length();
  const double kappa = 2.0 * kPi / lc;
  const double y = reduce_periodic(x, lc);
  const double theta = kappa * y;
  const bool coincident = (y == 0.0);
  if (coincident && (sd.coeff(1) != 0.0 || sd.coeff(-1) != 0.0)) {
    throw UvDivergence("circle mode sum diverges at coincident points for the " + channel_name(channel) + " " +
                       beta.source_name() + " correlator");
  }

  double asym = 0.0;
  for (int p = 2; p >= -2; --p) {
    const double c = sd.coeff(p);
    if (c == 0.0) continue;
    asym += c * std::pow(kappa, p) * lattice_sum(p, theta);
  }

  const int q = remainder_order(beta);
  const double k_resolved = 10.0 * sd.feature_momentum();
  std::vector<double> rem;
  int n_done = 0;
  double rem_sum = 0.0;
  double tail = std::numeric_limits<double>::infinity();
  for (int n_target = cfg.n_start;; n_target *= 2) {
    rem.resize(static_cast<std::size_t>(n_target - n_done));
    for (int n = n_done + 1; n <= n_target; ++n) {
      rem[static_cast<std::size_t>(n - n_done - 1)] = sd.circle_remainder(kappa * n);
    }
    rem_sum += kernels::cosine_series(rem, n_done + 1, theta);
    n_done = n_target;
    tail = std::abs(rem.back()) * n_done / (q - 1);
    if (kappa * n_done >= k_resolved && 2.0 * tail / lc <= cfg.tolerance) break;
    if (n_target * 2 > cfg.n_limit) {
      throw ConvergenceError("circle mode sum: remainder tail " + describe(tail) + " above tolerance at n = " +
                             std::to_string(n_done));
    }
  }

  CorrelatorValue r;
  r.value = (sd(0.0) + 2.0 * asym + 2.0 * rem_sum) / lc;
  r.error = 2.0 * tail / lc + 64.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
  return r;
}

double circle_correlator_truncated(const BetaFunction& beta, Channel channel, double x, int n_max) {
  const Geometry& geom = beta.geometry();
  if (!geom.is_circle()) throw DomainError("circle_correlator_truncated: beta must live on a circle");
  if (n_max < 0) throw DomainError("circle_correlator_truncated: n_max must be >= 0");
  require_positive_mass(beta);
  const double lc = geom.circle_length();
  const double kappa = 2.0 * kPi / lc;
  std::vector<double> c(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) c[static_cast<std::size_t>(n - 1)] = momentum_correlator(beta, channel, kappa * n);
  const double theta = kappa * reduce_periodic(x, lc);
  return (momentum_correlator(beta, channel, 0.0) + 2.0 * kernels::cosine_series(c, 1, theta)) / lc;
}

CoincidentReport circle_coincident(const BetaFunction& beta, Channel channel, double tolerance) {
  CoincidentReport rep;
  ModeSumConfig cfg;
  cfg.tolerance = tolerance;
  try {
    const CorrelatorValue v = circle_correlator_modesum(beta, channel, 0.0, cfg);
    rep.kind = CoincidentKind::Plateau;
    rep.value = v.value;
    rep.error = v.error;
    rep.reason = "finite plateau (terms supported at x = 0 excluded)";
  } catch (const UvDivergence& e) {
    rep.kind = CoincidentKind::UvDivergent;
    rep.reason = e.what();
  }
  return rep;
}

CorrelatorValue circle_correlator_imagesum(const LineEvaluator& line, double rate, double lc, double x,
                                           const ImageSumConfig& cfg) {
  if (!(rate > 0.0)) throw PolicyError("circle image sum needs a positive decay rate");
  if (!(lc > 0.0)) throw DomainError("circle image sum: l_c must be > 0");
  const double y = reduce_periodic(x, lc);
  if (y == 0.0) throw DomainError("circle image sum: x must not coincide with an image point");

  const double q = std::exp(-rate * lc);
  CorrelatorValue total = line(y);
  for (int n = 1; n <= cfg.max_images; ++n) {
    const CorrelatorValue plus = line(y + n * lc);
    const CorrelatorValue minus = line(n * lc - y);
    total.value += plus.value + minus.value;
    total.error += plus.error + minus.error;
    const double t = std::abs(plus.value) + std::abs(minus.value);
    const double tail = t * q / (1.0 - q);
    if (n >= 2 && tail <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value))) {
      total.error += tail;
      return total;
    }
  }
  throw PolicyError("circle image sum: tail still above tolerance after max_images = " +
                    std::to_string(cfg.max_images));
}

CorrelatorValue circle_correlator_imagesum(const BetaFunction& beta, Channel channel, double x,
                                           const ImageSumConfig& cfg, const LineQuadConfig& line_cfg) {
  if (!beta.geometry().is_circle()) throw DomainError("circle_correlator_imagesum: beta must live on a circle");
  require_positive_mass(beta);
  const SpectralDensity sd(beta, channel);
  require_model(sd);
  LineEvaluator line;
  if (beta.kind() == BetaFunction::Kind::Qft) {
    const double m = beta.mass();
    line = [m, channel](double d) {
      const double v = qft_line_closed(channel, m, d);
      return CorrelatorValue{v, 1e-15 * std::abs(v)};
    };
  } else {
    const BetaFunction on_line = BetaFunction::cmera(beta.lambda(), beta.s());
    line = [on_line, channel, line_cfg](double d) { return line_correlator_real(on_line, channel, d, line_cfg); };
  }
  return circle_correlator_imagesum(line, sd.decay_rate(), beta.geometry().circle_length(), x, cfg);
}

// ---------------------------------------------------------------------------
// Tables.

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

CorrelatorTable build_correlator_table(const BetaFunction& beta, Channel channel, std::span<const double> x,
                                       const TableConfig& cfg) {
  CorrelatorTable t;
  t.channel = channel;
  t.source = beta.source_name();
  t.geometry = beta.geometry();
  if (beta.kind() == BetaFunction::Kind::Cmera) {
    t.lambda = beta.lambda();
    t.s = beta.s();
  } else {
    t.mass = beta.mass();
  }
  t.x.assign(x.begin(), x.end());
  t.value.assign(x.size(), 0.0);
  t.error.assign(x.size(), 0.0);

  const bool circle = beta.geometry().is_circle();
  if (!circle && !beta.geometry().is_line()) {
    throw DomainError("correlator tables are available on the line and the circle");
  }
  parallel_for(x.size(), cfg.threads, [&](std::size_t i) {
    CorrelatorValue v;
    if (!circle) {
      v = line_correlator_real(beta, channel, x[i], cfg.line);
    } else {
      const double y = reduce_periodic(x[i], beta.geometry().circle_length());
      if (cfg.route == CircleRoute::ModeSum || y == 0.0) {
        v = circle_correlator_modesum(beta, channel, x[i], cfg.modes);
      } else {
        v = circle_correlator_imagesum(beta, channel, x[i], cfg.images, cfg.line);
      }
    }
    t.value[i] = v.value;
    t.error[i] = v.error;
  });

  if (circle) {
    const double lc = beta.geometry().circle_length();
    const double kappa = 2.0 * kPi / lc;
    constexpr int kWindow = 64;
    for (double xi : t.x) {
      double im = 0.0;
      for (int n = -kWindow; n <= kWindow; ++n) {
        im += std::sin(kappa * n * xi) * momentum_correlator(beta, channel, kappa * n);
      }
      t.imag_residue = std::max(t.imag_residue, std::abs(im) / lc);
    }
  }
  return t;
}

}  // namespace cmera
