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

#include "cmera/scale_evolution.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "cmera/error.hpp"
#include "cmera/kernels.hpp"

namespace cmera {

void OdeStepControl::validate() const {
  if (!(ds > 0.0 && ds <= 0.1)) throw DomainError("OdeStepControl: ds must lie in (0, 0.1]");
  if (!(s_max > 0.0) || !std::isfinite(s_max)) throw DomainError("OdeStepControl: s_max must be positive");
  if (!(richardson_tol > 0.0)) throw DomainError("OdeStepControl: richardson_tol must be > 0");
}

double beta_magic_closed(double k, double lambda, double s) {
  if (!(lambda > 0.0)) throw DomainError("beta_magic_closed: lambda must be > 0");
  if (!(s >= 0.0)) throw DomainError("beta_magic_closed: s must be >= 0");
  const double a = std::exp(-s);
  const double k2 = k * k;
  const double l2 = lambda * lambda;
  return lambda * std::sqrt((k2 + l2) / (a * a * k2 + l2));
}

namespace {

// int_0^s g(s') ds' by composite Simpson with n panels; also checks the
// stability bound at every node.
double simpson_exponent(const std::function<double(double)>& g, double s, int n) {
  const double h = s / n;
  auto at = [&](double t) {
    const double v = g(t);
    if (std::abs(h * v) > 0.5) {
      throw StepControlError("scale ODE: |ds * g| = " + describe(std::abs(h * v)) + " exceeds 0.5");
    }
    return v;
  };
  double sum = at(0.0) + at(s);
  for (int i = 0; i < n; ++i) sum += 4.0 * at((i + 0.5) * h);
  for (int i = 1; i < n; ++i) sum += 2.0 * at(i * h);
  return sum * h / 6.0;
}

double integrate_log_beta(const std::function<double(double)>& g, double lambda, double s_final,
                          const OdeStepControl& ctrl) {
  ctrl.validate();
  if (!(s_final >= 0.0) || s_final > ctrl.s_max) {
    throw DomainError("scale ODE: s_final must lie in [0, s_max]");
  }
  if (s_final == 0.0) return lambda;
  const int n = std::max(1, static_cast<int>(std::ceil(s_final / ctrl.ds - 1e-9)));
  const double coarse = lambda * std::exp(-2.0 * simpson_exponent(g, s_final, n));
  const double fine = lambda * std::exp(-2.0 * simpson_exponent(g, s_final, 2 * n));
  if (std::abs(fine - coarse) > ctrl.richardson_tol * std::abs(fine)) {
    throw StepControlError("scale ODE: halved step changed beta by more than the Richardson tolerance");
  }
  return fine;
}

}  // namespace

double beta_ode_integrate(const EntanglingProfile& profile, double k, double s_final, const OdeStepControl& ctrl) {
  return integrate_log_beta([&](double sp) { return profile.generator(sp, k); }, profile.lambda(), s_final, ctrl);
}

double beta_circle(int n, double lambda, double s, const Geometry& circle) {
  return beta_magic_closed(momentum_of_mode(circle, n), lambda, s);
}

double beta_circle_ode(const WrappedProfile& profile, int n, double s_final, const OdeStepControl& ctrl) {
  if (!profile.geometry().is_circle()) throw DomainError("beta_circle_ode: profile must be wrapped on a circle");
  const double kn = momentum_of_mode(profile.geometry(), n);
  const EntanglingProfile& base = profile.base();
  return integrate_log_beta([&](double sp) { return base.generator(sp, kn); }, base.lambda(), s_final, ctrl);
}

double beta_qft(double k, double m) {
  if (!(m >= 0.0)) throw DomainError("beta_qft: mass must be >= 0");
  return std::sqrt(k * k + m * m);
}

Dispersion beta_qft_generic(std::span<const double> a, std::span<const double> b, double k) {
  if (a.empty() || b.empty()) throw DomainError("beta_qft_generic: coefficient lists must be non-empty");
  const double k2 = k * k;
  auto horner = [k2](std::span<const double> c) {
    double v = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) v = v * k2 + c[i];
    return v;
  };
  const double p = horner(a);
  const double q = horner(b);
  if (!(p > 0.0) || !(q > 0.0)) {
    throw DomainError("beta_qft_generic: P(k) and Q(k) must be positive at k = " + describe(k));
  }
  return {std::sqrt(q * p), std::sqrt(q / p)};
}

BetaFunction BetaFunction::cmera(double lambda, double s, Geometry geom, Strategy strategy, OdeStepControl ctrl) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("cMERA beta: lambda must be > 0");
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("cMERA beta: s must be >= 0");
  ctrl.validate();
  BetaFunction b;
  b.kind_ = Kind::Cmera;
  b.strategy_ = strategy;
  b.geom_ = std::move(geom);
  b.lambda_ = lambda;
  b.s_ = s;
  b.ctrl_ = ctrl;
  return b;
}

BetaFunction BetaFunction::qft(double m, Geometry geom) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("QFT beta: mass must be >= 0");
  BetaFunction b;
  b.kind_ = Kind::Qft;
  b.geom_ = std::move(geom);
  b.m_ = m;
  return b;
}

BetaFunction BetaFunction::generic(std::vector<double> a, std::vector<double> bc, Geometry geom) {
  if (a.empty() || bc.empty()) throw DomainError("generic beta: coefficient lists must be non-empty");
  BetaFunction b;
  b.kind_ = Kind::GenericQft;
  b.geom_ = std::move(geom);
  b.a_ = std::move(a);
  b.b_ = std::move(bc);
  return b;
}

double BetaFunction::operator()(double k) const {
  switch (kind_) {
    case Kind::Cmera:
      if (strategy_ == Strategy::OdeIntegrated) {
        return beta_ode_integrate(EntanglingProfile::magic(lambda_, s_), k, s_, ctrl_);
      }
      return beta_magic_closed(k, lambda_, s_);
    case Kind::Qft:
      return beta_qft(k, m_);
    case Kind::GenericQft:
      return beta_qft_generic(a_, b_, k).beta;
  }
  return 0.0;
}

double BetaFunction::mode(int n) const { return (*this)(momentum_of_mode(geom_, n)); }

void BetaFunction::evaluate(std::span<const double> k, std::span<double> out) const {
  if (out.size() < k.size()) throw DomainError("BetaFunction::evaluate: output span too small");
  if (kind_ == Kind::Cmera && strategy_ == Strategy::ClosedForm) {
    kernels::magic_beta(k, lambda_, std::exp(-s_), out);
  } else if (kind_ == Kind::Qft) {
    kernels::qft_beta(k, m_, out);
  } else {
    for (std::size_t i = 0; i < k.size(); ++i) out[i] = (*this)(k[i]);
  }
}

std::string BetaFunction::source_name() const { return kind_ == Kind::Cmera ? "cmera" : "qft"; }

}  // namespace cmera
