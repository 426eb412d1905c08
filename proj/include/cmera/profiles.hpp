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

// Entangling profiles. In the rescaled picture the real-space profile is a
// smooth kernel plus a delta term; the delta coefficient is kept as a
// separate scalar and never sampled.

#include <string>

#include "cmera/geometry.hpp"
#include "cmera/images.hpp"

namespace cmera {

enum class Picture { FixedScale, Rescaled };

struct ProfileValue {
  double smooth = 0.0;
  double delta_coeff = 0.0;
};

/// FixedScale: g(k) = L^2 / (2 (k^2 + L^2)).
/// Rescaled:   g~(s,k) = g(e^{-s} k) - 1/2.
double magic_profile_momentum(double k, double lambda, double s, Picture picture = Picture::Rescaled);

/// Rescaled form written as -(1/2) q^2 / (q^2 + L^2), q = e^{-s} k. Must agree
/// with magic_profile_momentum to rounding.
double magic_profile_momentum_reduced(double k, double lambda, double s);

/// Rescaled: smooth (e^s L / 4) e^{-e^s L |x|}, delta -1/2.
/// FixedScale: smooth (L / 4) e^{-L |x|}, no delta.
ProfileValue magic_profile_real(double x, double lambda, double s, Picture picture = Picture::Rescaled);

class EntanglingProfile {
 public:
  enum class Kind { Magic, Constant };

  static EntanglingProfile magic(double lambda, double s, Picture picture = Picture::Rescaled);
  /// g~(s,k) = c for every s and k: a pure delta kernel in real space. Used
  /// as an analytically solvable generator.
  static EntanglingProfile constant(double c, double lambda, double s = 0.0);

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double s() const { return s_; }
  Picture picture() const { return picture_; }
  const Geometry& geometry() const { return geometry_; }

  /// Momentum profile at this profile's own s.
  double momentum(double k) const;
  /// Rescaled generator g~(s', k) for the scale ODE, at arbitrary s'.
  double generator(double s_prime, double k) const;
  ProfileValue real(double x) const;

  /// Exponential envelope of the smooth real-space part.
  DecayCertificate decay() const;
  /// Effective inverse length of the smooth part: e^s L (rescaled) or L.
  double rate() const;
  /// Smooth real-space part as an image-sum test function; its momentum
  /// form is momentum(k) minus the delta coefficient.
  TestFunction smooth_part() const;

  /// Same profile evaluated at another scale.
  EntanglingProfile at_scale(double s) const;

 private:
  EntanglingProfile(Kind kind, double lambda, double s, Picture picture, double c);

  Kind kind_;
  double lambda_;
  double s_;
  Picture picture_;
  double constant_;
  Geometry geometry_ = Geometry::line();
};

/// A line profile wrapped onto a circle or a torus. On the torus the base is
/// the product of two copies of the 1D smooth part.
class WrappedProfile {
 public:
  WrappedProfile(EntanglingProfile base, Geometry geom, ImageSumPolicy policy = {});

  const EntanglingProfile& base() const { return base_; }
  const Geometry& geometry() const { return geom_; }
  const ImageSumPolicy& policy() const { return policy_; }
  bool closed_form_available() const { return base_.kind() == EntanglingProfile::Kind::Magic; }
  /// Image truncation order per axis.
  int images(int axis = 0) const;
  double tail_bound(int axis = 0) const;

  /// Circle: truncated image sum of the smooth part at x (reduced into
  /// [0, l_c)).
  double image_sum(double x) const;
  /// Circle: cosh/sinh closed form of the full image sum.
  double closed_form(double x) const;
  /// Circle: closed form when available, image sum otherwise, plus the
  /// untouched delta coefficient.
  ProfileValue operator()(double x) const;

  double image_sum(double x1, double x2) const;
  double closed_form(double x1, double x2) const;
  double operator()(double x1, double x2) const;

  double delta_coeff() const { return base_.real(1.0).delta_coeff; }

  /// Discrete coefficient g~_c(s, n) = g~(s, k_n).
  double momentum(int n) const;
  /// g~_c(s, n) from Romberg quadrature of the wrapped smooth part over one
  /// period plus the delta coefficient.
  double momentum_by_quadrature(int n, double quad_tol) const;

 private:
  EntanglingProfile base_;
  Geometry geom_;
  ImageSumPolicy policy_;
  int n1_ = 0;
  int n2_ = 0;
};

WrappedProfile wrap_profile(const EntanglingProfile& base, const Geometry& circle, const ImageSumPolicy& policy = {});
WrappedProfile wrap_profile_torus(const EntanglingProfile& base, const Geometry& torus,
                                  const ImageSumPolicy& policy = {});

/// Half-line profile from the even (Neumann) or odd (Dirichlet) extension of
/// a line profile. The smooth part is folded; the delta term survives only
/// as a coefficient of delta(x - y).
class HalfLineProfile {
 public:
  HalfLineProfile(EntanglingProfile base, BoundaryCondition bc);

  /// (1/4) sum over the four reflected separations {x-y, y-x, x+y, -x-y},
  /// with the odd images negated for Dirichlet.
  double four_term(double x, double y) const;
  /// (1/2) (g(x-y) +- g(x+y)).
  double reduced(double x, double y) const;
  /// Evaluates both forms and throws Error if they disagree beyond rounding.
  ProfileValue operator()(double x, double y) const;

  BoundaryCondition boundary() const { return bc_; }
  const EntanglingProfile& base() const { return base_; }

 private:
  EntanglingProfile base_;
  BoundaryCondition bc_;
};

HalfLineProfile fold_profile_halfline(const EntanglingProfile& base, BoundaryCondition bc);

Picture parse_picture(const std::string& name);
std::string picture_name(Picture p);

}  // namespace cmera
