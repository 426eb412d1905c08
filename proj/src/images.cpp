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

#include "cmera/images.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "cmera/error.hpp"
#include "cmera/kernels.hpp"
#include "cmera/quadrature.hpp"

namespace cmera {

namespace {

void require_period(double period) {
  if (!(std::isfinite(period) && period > 0.0)) throw DomainError("period must be positive and finite");
}

void require_certificate(const DecayCertificate& cert) {
  if (!(cert.rate > 0.0) || !(cert.prefactor >= 0.0) || !std::isfinite(cert.prefactor)) {
    throw PolicyError("image sum needs a decay certificate with rate > 0 and finite prefactor");
  }
}

}  // namespace

double reduce_periodic(double x, double period) {
  double r = x - period * std::floor(x / period);
  if (r >= period) r -= period;
  if (r < 0.0) r = 0.0;
  return r;
}

// The bound A e^{-a(N-1)l} (1 + e^{-al}) / (1 - e^{-al}) dominates both the
// exact two-sided tail and the one-sided form A e^{-a(N-1)l} / (1 - e^{-al}).
double ImageSumPolicy::tail_bound(const DecayCertificate& cert, double period, int n) {
  const double r = std::exp(-cert.rate * period);
  return cert.prefactor * std::exp(-cert.rate * (n - 1) * period) * (1.0 + r) / -std::expm1(-cert.rate * period);
}

void ImageSumPolicy::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("ImageSumPolicy: tolerance must be > 0");
  if (max_images < 1) throw DomainError("ImageSumPolicy: max_images must be >= 1");
}

int ImageSumPolicy::truncation_order(const DecayCertificate& cert, double period) const {
  validate();
  require_certificate(cert);
  require_period(period);
  if (cert.prefactor == 0.0) return 1;

  const double r = std::exp(-cert.rate * period);
  const double log_needed = std::log(cert.prefactor * (1.0 + r) / (-std::expm1(-cert.rate * period) * tolerance));
  double n_real = 1.0 + std::max(0.0, log_needed / (cert.rate * period));
  if (!(n_real < static_cast<double>(max_images) + 2.0)) {
    throw PolicyError("image sum needs more than max_images = " + std::to_string(max_images) + " images");
  }
  int n = std::max(1, static_cast<int>(std::ceil(n_real)));
  while (n > 1 && tail_bound(cert, period, n - 1) <= tolerance) --n;
  while (tail_bound(cert, period, n) > tolerance) ++n;
  if (n > max_images) {
    throw PolicyError("image sum needs more than max_images = " + std::to_string(max_images) + " images");
  }
  return n;
}

TestFunction TestFunction::exponential() {
  TestFunction f;
  f.id = "exponential";
  f.real = [](double x) { return std::exp(-std::abs(x)); };
  f.momentum = [](double k) { return 2.0 / (1.0 + k * k); };
  f.decay = {1.0, 1.0};
  return f;
}

TestFunction TestFunction::gaussian() {
  TestFunction f;
  f.id = "gaussian";
  f.real = [](double x) { return std::exp(-x * x); };
  f.momentum = [](double k) { return std::sqrt(std::numbers::pi) * std::exp(-0.25 * k * k); };
  // e^{-x^2} <= e^{a^2/4} e^{-a|x|} for every a > 0.
  f.decay = {4.0, std::exp(4.0)};
  return f;
}

PeriodicFunction::PeriodicFunction(TestFunction f, double period, int images, double tail_bound)
    : f_(std::move(f)), period_(period), images_(images), tail_bound_(tail_bound) {}

double PeriodicFunction::operator()(double x) const {
  const double y = reduce_periodic(x, period_);
  double sum = 0.0;
  for (int n = images_; n >= 1; --n) sum += f_.real(y + n * period_) + f_.real(y - n * period_);
  return sum + f_.real(y);
}

PeriodicFunction wrap(const TestFunction& f, double period, const ImageSumPolicy& policy) {
  require_period(period);
  if (!f.real) throw DomainError("wrap: test function has no real-space evaluator");
  const int n = policy.truncation_order(f.decay, period);
  return PeriodicFunction(f, period, n, ImageSumPolicy::tail_bound(f.decay, period, n));
}

SamplingReport verify_sampling_theorem(const TestFunction& f, double period, int n_max, double quad_tol,
                                       const ImageSumPolicy& policy) {
  if (!f.momentum) throw DomainError("verify_sampling_theorem: '" + f.id + "' has no momentum-space form");
  if (!f.even) throw DomainError("verify_sampling_theorem: only even test functions are supported");
  if (n_max < 0) throw DomainError("verify_sampling_theorem: n_max must be >= 0");
  if (!(quad_tol > 0.0)) throw DomainError("verify_sampling_theorem: quad_tol must be > 0");

  const PeriodicFunction fc = wrap(f, period, policy);
  SamplingReport report;
  report.function_id = f.id;
  report.period = period;
  report.images = fc.images();

  for (int n = -n_max; n <= n_max; ++n) {
    const double kn = 2.0 * std::numbers::pi / period * n;
    const quad::Estimate est =
        quad::romberg([&](double x) { return std::cos(kn * x) * fc(x); }, 0.0, period, quad_tol);
    SamplingRow row;
    row.n = n;
    row.f_c_n = est.value;
    row.f_kn = f.momentum(kn);
    row.abs_dev = std::abs(row.f_c_n - row.f_kn);
    report.max_abs_dev = std::max(report.max_abs_dev, row.abs_dev);
    report.rows.push_back(row);
  }
  return report;
}

double resynthesize_from_samples(const TestFunction& f, double period, double x, int n_max) {
  if (!f.momentum) throw DomainError("resynthesize_from_samples: no momentum-space form");
  require_period(period);
  const double kappa = 2.0 * std::numbers::pi / period;
  std::vector<double> coeff(static_cast<std::size_t>(std::max(0, n_max)));
  for (int n = 1; n <= n_max; ++n) coeff[static_cast<std::size_t>(n - 1)] = f.momentum(kappa * n);
  const double theta = kappa * reduce_periodic(x, period);
  return (f.momentum(0.0) + 2.0 * kernels::cosine_series(coeff, 1, theta)) / period;
}

PeriodicFunction2D::PeriodicFunction2D(TestFunction2D f, double l1, double l2, int n1, int n2)
    : f_(std::move(f)), l1_(l1), l2_(l2), n1_(n1), n2_(n2) {}

double PeriodicFunction2D::operator()(double x1, double x2) const {
  const double y1 = reduce_periodic(x1, l1_);
  const double y2 = reduce_periodic(x2, l2_);
  double sum = 0.0;
  for (int a = -n1_; a <= n1_; ++a)
    for (int b = -n2_; b <= n2_; ++b) sum += f_.real(y1 + a * l1_, y2 + b * l2_);
  return sum;
}

PeriodicFunction2D wrap_2d(const TestFunction2D& f, double l1, double l2, const ImageSumPolicy& policy) {
  require_period(l1);
  require_period(l2);
  require_certificate(f.decay);
  if (!f.real) throw DomainError("wrap_2d: test function has no real-space evaluator");

  // Truncating axis i leaves a tail bounded by the 1D tail times the full
  // image sum along the other axis, which is at most coth(a l_j / 2).
  auto axis_order = [&](double own, double other) {
    DecayCertificate cert = f.decay;
    cert.prefactor *= 1.0 / std::tanh(0.5 * f.decay.rate * other);
    ImageSumPolicy half = policy;
    half.tolerance = 0.5 * policy.tolerance;
    return half.truncation_order(cert, own);
  };
  return PeriodicFunction2D(f, l1, l2, axis_order(l1, l2), axis_order(l2, l1));
}

}  // namespace cmera
