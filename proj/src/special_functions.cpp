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

#include "cmera/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cmera/error.hpp"

namespace cmera {

namespace {

constexpr int kMaxIterations = 1000;

double convergence_tolerance(const BesselAccuracy& acc) {
  // The iteration runs to machine precision unless the caller asked for
  // something looser than 1e-12.
  return std::max(0.5 * std::numeric_limits<double>::epsilon(), 1e-4 * acc.abs_tol);
}

}  // namespace

void BesselAccuracy::validate() const {
  if (!(abs_tol > 0.0 && abs_tol <= 1e-6)) {
    throw DomainError("BesselAccuracy: abs_tol must lie in (0, 1e-6]");
  }
  if (!(std::isfinite(switchover) && switchover > 0.0)) {
    throw DomainError("BesselAccuracy: switchover must be positive");
  }
}

namespace detail {

// K_0(x) = -(ln(x/2)) I_0(x) + sum_k psi(k+1) q^k / (k!)^2
// K_1(x) = 1/x + ln(x/2) I_1(x) - (x/4) sum_k [psi(k+1) + psi(k+2)] q^k / (k! (k+1)!)
// with q = x^2/4 and psi(1) = -gamma.
BesselK01 bessel_k01_series(double x, double rel_tol) {
  const double q = 0.25 * x * x;
  const double log_half_x = std::log(0.5 * x);

  double psi = -std::numbers::egamma;  // psi(k+1)
  double t0 = 1.0;                     // q^k / (k!)^2
  double t1 = 1.0;                     // q^k / (k! (k+1)!)
  double i0 = 0.0, s0 = 0.0, i1 = 0.0, s1 = 0.0;

  int k = 0;
  for (; k < kMaxIterations; ++k) {
    const double psi_next = psi + 1.0 / (k + 1);
    i0 += t0;
    s0 += psi * t0;
    i1 += t1;
    s1 += (psi + psi_next) * t1;

    const double scale = std::max({std::abs(i0), std::abs(s0), std::abs(s1), 1.0});
    const double last = std::max(std::abs(t0), std::abs(t1)) * std::max(1.0, std::abs(psi_next) * 2.0);
    if (k > 0 && last <= rel_tol * scale) break;

    psi = psi_next;
    t0 *= q / ((k + 1.0) * (k + 1.0));
    t1 *= q / ((k + 1.0) * (k + 2.0));
  }
  if (k == kMaxIterations) {
    throw ConvergenceError("bessel_k01_series did not converge at x = " + describe(x));
  }

  BesselK01 out{};
  out.k0 = -log_half_x * i0 + s0;
  out.k1 = 1.0 / x + log_half_x * (0.5 * x * i1) - 0.25 * x * s1;
  return out;
}

// Steed's method for the continued fraction CF2 (Temme), order nu = 0.
BesselK01 bessel_k01_continued_fraction(double x, double rel_tol) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;

  int i = 1;
  for (; i <= kMaxIterations; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < rel_tol) break;
  }
  if (i > kMaxIterations) {
    throw ConvergenceError("bessel_k01_continued_fraction did not converge at x = " + describe(x));
  }
  h *= a1;

  BesselK01 out{};
  out.k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  out.k1 = out.k0 * (x + 0.5 - h) / x;
  return out;
}

}  // namespace detail

BesselK01 bessel_k01(double x, const BesselAccuracy& acc) {
  acc.validate();
  if (!(x > 0.0) || std::isnan(x)) {
    throw DomainError("bessel_k: argument must be > 0, got " + describe(x));
  }
  if (std::isinf(x)) return {0.0, 0.0};
  const double tol = convergence_tolerance(acc);
  return x < acc.switchover ? detail::bessel_k01_series(x, tol)
                            : detail::bessel_k01_continued_fraction(x, tol);
}

double bessel_k(int order, double x, const BesselAccuracy& acc) {
  if (order < 0 || order > 2) throw DomainError("bessel_k: order must be 0, 1 or 2");
  const BesselK01 k = bessel_k01(x, acc);
  switch (order) {
    case 0:
      return k.k0;
    case 1:
      return k.k1;
    default:
      return k.k0 + 2.0 * k.k1 / x;
  }
}

double wrapped_exponential_sum(double a, double b) {
  if (!(std::isfinite(b) && b > 0.0)) throw DomainError("wrapped_exponential_sum: b must be > 0");
  if (!(a >= 0.0 && a <= b)) throw DomainError("wrapped_exponential_sum: a must lie in [0, b]");
  return (std::exp(-a) + std::exp(-(b - a))) / -std::expm1(-b);
}

}  // namespace cmera
