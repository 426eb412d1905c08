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

#include "cmera/profiles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "cmera/error.hpp"
#include "cmera/quadrature.hpp"
#include "cmera/special_functions.hpp"

namespace cmera {

namespace {

void require_params(double lambda, double s) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("profile: lambda must be positive and finite");
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("profile: s must be >= 0 and finite");
}

double fixed_scale_g(double k, double lambda) { return lambda * lambda / (2.0 * (k * k + lambda * lambda)); }

}  // namespace

double magic_profile_momentum(double k, double lambda, double s, Picture picture) {
  require_params(lambda, s);
  if (picture == Picture::FixedScale) return fixed_scale_g(k, lambda);
  return fixed_scale_g(std::exp(-s) * k, lambda) - 0.5;
}

double magic_profile_momentum_reduced(double k, double lambda, double s) {
  require_params(lambda, s);
  const double q = std::exp(-s) * k;
  if (std::isinf(q)) return -0.5;
  return -0.5 * q * q / (q * q + lambda * lambda);
}

ProfileValue magic_profile_real(double x, double lambda, double s, Picture picture) {
  require_params(lambda, s);
  if (picture == Picture::FixedScale) return {0.25 * lambda * std::exp(-lambda * std::abs(x)), 0.0};
  const double rate = std::exp(s) * lambda;
  return {0.25 * rate * std::exp(-rate * std::abs(x)), -0.5};
}

EntanglingProfile::EntanglingProfile(Kind kind, double lambda, double s, Picture picture, double c)
    : kind_(kind), lambda_(lambda), s_(s), picture_(picture), constant_(c) {
  require_params(lambda, s);
}

EntanglingProfile EntanglingProfile::magic(double lambda, double s, Picture picture) {
  return EntanglingProfile(Kind::Magic, lambda, s, picture, 0.0);
}

EntanglingProfile EntanglingProfile::constant(double c, double lambda, double s) {
  if (!std::isfinite(c)) throw DomainError("constant profile: value must be finite");
  return EntanglingProfile(Kind::Constant, lambda, s, Picture::Rescaled, c);
}

double EntanglingProfile::momentum(double k) const {
  if (kind_ == Kind::Constant) return constant_;
  return magic_profile_momentum(k, lambda_, s_, picture_);
}

double EntanglingProfile::generator(double s_prime, double k) const {
  if (kind_ == Kind::Constant) return constant_;
  return magic_profile_momentum_reduced(k, lambda_, s_prime);
}

ProfileValue EntanglingProfile::real(double x) const {
  if (kind_ == Kind::Constant) return {0.0, constant_};
  return magic_profile_real(x, lambda_, s_, picture_);
}

double EntanglingProfile::rate() const {
  return picture_ == Picture::Rescaled ? std::exp(s_) * lambda_ : lambda_;
}

DecayCertificate EntanglingProfile::decay() const {
  if (kind_ == Kind::Constant) return {lambda_, 0.0};
  return {rate(), 0.25 * rate()};
}

TestFunction EntanglingProfile::smooth_part() const {
  TestFunction f;
  f.id = "magic-profile-smooth";
  const EntanglingProfile self = *this;
  f.real = [self](double x) { return self.real(x).smooth; };
  f.momentum = [self](double k) {
    if (self.kind_ == Kind::Constant) return 0.0;
    if (self.picture_ == Picture::FixedScale) return fixed_scale_g(k, self.lambda_);
    return fixed_scale_g(std::exp(-self.s_) * k, self.lambda_);
  };
  f.decay = decay();
  return f;
}

EntanglingProfile EntanglingProfile::at_scale(double s) const {
  return EntanglingProfile(kind_, lambda_, s, picture_, constant_);
}

WrappedProfile::WrappedProfile(EntanglingProfile base, Geometry geom, ImageSumPolicy policy)
    : base_(std::move(base)), geom_(std::move(geom)), policy_(policy) {
  policy_.validate();
  const DecayCertificate cert = base_.decay();
  if (geom_.is_circle()) {
    n1_ = policy_.truncation_order(cert, geom_.circle_length());
  } else if (geom_.is_torus()) {
    TestFunction2D f2{"magic-profile-smooth-2d", {}, cert};
    f2.real = [](double, double) { return 0.0; };
    // The 2D certificate is the product of the 1D ones.
    f2.decay.prefactor = cert.prefactor * cert.prefactor;
    const PeriodicFunction2D w = wrap_2d(f2, geom_.period(0), geom_.period(1), policy_);
    n1_ = w.images(0);
    n2_ = w.images(1);
  } else {
    throw DomainError("wrap_profile: geometry must be a circle or a torus, got " + geom_.kind_name());
  }
}

int WrappedProfile::images(int axis) const { return axis == 0 ? n1_ : n2_; }

double WrappedProfile::tail_bound(int axis) const {
  return ImageSumPolicy::tail_bound(base_.decay(), geom_.period(axis), images(axis));
}

double WrappedProfile::image_sum(double x) const {
  if (!geom_.is_circle()) throw DomainError("WrappedProfile: one-argument evaluation needs a circle");
  const double lc = geom_.circle_length();
  const double y = reduce_periodic(x, lc);
  double sum = 0.0;
  for (int n = n1_; n >= 1; --n) sum += base_.real(y + n * lc).smooth + base_.real(y - n * lc).smooth;
  return sum + base_.real(y).smooth;
}

double WrappedProfile::closed_form(double x) const {
  if (!geom_.is_circle()) throw DomainError("WrappedProfile: one-argument evaluation needs a circle");
  if (!closed_form_available()) throw DomainError("WrappedProfile: no closed form for this profile");
  const double lc = geom_.circle_length();
  const double r = base_.rate();
  return 0.25 * r * wrapped_exponential_sum(r * reduce_periodic(x, lc), r * lc);
}

ProfileValue WrappedProfile::operator()(double x) const {
  const double smooth = closed_form_available() ? closed_form(x) : image_sum(x);
  return {smooth, delta_coeff()};
}

double WrappedProfile::image_sum(double x1, double x2) const {
  if (!geom_.is_torus()) throw DomainError("WrappedProfile: two-argument evaluation needs a torus");
  const double l1 = geom_.period(0);
  const double l2 = geom_.period(1);
  const double y1 = reduce_periodic(x1, l1);
  const double y2 = reduce_periodic(x2, l2);
  double sum = 0.0;
  for (int a = -n1_; a <= n1_; ++a) {
    const double g1 = base_.real(y1 + a * l1).smooth;
    for (int b = -n2_; b <= n2_; ++b) sum += g1 * base_.real(y2 + b * l2).smooth;
  }
  return sum;
}

double WrappedProfile::closed_form(double x1, double x2) const {
  if (!geom_.is_torus()) throw DomainError("WrappedProfile: two-argument evaluation needs a torus");
  if (!closed_form_available()) throw DomainError("WrappedProfile: no closed form for this profile");
  const double r = base_.rate();
  auto axis = [&](double x, double l) { return 0.25 * r * wrapped_exponential_sum(r * reduce_periodic(x, l), r * l); };
  return axis(x1, geom_.period(0)) * axis(x2, geom_.period(1));
}

double WrappedProfile::operator()(double x1, double x2) const {
  return closed_form_available() ? closed_form(x1, x2) : image_sum(x1, x2);
}

double WrappedProfile::momentum(int n) const {
  if (!geom_.is_circle()) throw DomainError("WrappedProfile::momentum: circle only");
  return base_.momentum(momentum_of_mode(geom_, n));
}

double WrappedProfile::momentum_by_quadrature(int n, double quad_tol) const {
  if (!geom_.is_circle()) throw DomainError("WrappedProfile::momentum_by_quadrature: circle only");
  const double lc = geom_.circle_length();
  const double kn = momentum_of_mode(geom_, n);
  const quad::Estimate e =
      quad::romberg([&](double x) { return std::cos(kn * x) * (*this)(x).smooth; }, 0.0, lc, quad_tol);
  return e.value + delta_coeff();
}

WrappedProfile wrap_profile(const EntanglingProfile& base, const Geometry& circle, const ImageSumPolicy& policy) {
  if (!circle.is_circle()) throw DomainError("wrap_profile: geometry must be a circle");
  return WrappedProfile(base, circle, policy);
}

WrappedProfile wrap_profile_torus(const EntanglingProfile& base, const Geometry& torus, const ImageSumPolicy& policy) {
  if (!torus.is_torus()) throw DomainError("wrap_profile_torus: geometry must be a torus");
  return WrappedProfile(base, torus, policy);
}

HalfLineProfile::HalfLineProfile(EntanglingProfile base, BoundaryCondition bc) : base_(std::move(base)), bc_(bc) {}

namespace {

void require_positive(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("half-line profile: both arguments must be > 0");
}

}  // namespace

double HalfLineProfile::four_term(double x, double y) const {
  require_positive(x, y);
  const double sign = bc_ == BoundaryCondition::Neumann ? 1.0 : -1.0;
  auto g = [&](double d) { return base_.real(d).smooth; };
  return 0.25 * (g(x - y) + g(y - x) + sign * g(x + y) + sign * g(-x - y));
}

double HalfLineProfile::reduced(double x, double y) const {
  require_positive(x, y);
  const double sign = bc_ == BoundaryCondition::Neumann ? 1.0 : -1.0;
  return 0.5 * (base_.real(x - y).smooth + sign * base_.real(x + y).smooth);
}

ProfileValue HalfLineProfile::operator()(double x, double y) const {
  const double a = four_term(x, y);
  const double b = reduced(x, y);
  const double scale = std::abs(base_.real(0.0).smooth);
  if (std::abs(a - b) > 8.0 * std::numeric_limits<double>::epsilon() * scale) {
    throw Error("half-line fold: four-term and reduced forms disagree");
  }
  return {b, 0.5 * base_.real(1.0).delta_coeff};
}

HalfLineProfile fold_profile_halfline(const EntanglingProfile& base, BoundaryCondition bc) {
  return HalfLineProfile(base, bc);
}

Picture parse_picture(const std::string& name) {
  if (name == "rescaled") return Picture::Rescaled;
  if (name == "fixed" || name == "fixed_scale") return Picture::FixedScale;
  throw ConfigError("unknown picture '" + name + "' (expected rescaled or fixed)");
}

std::string picture_name(Picture p) { return p == Picture::Rescaled ? "rescaled" : "fixed"; }

}  // namespace cmera
