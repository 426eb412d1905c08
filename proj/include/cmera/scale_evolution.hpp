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

#include <span>
#include <string>
#include <vector>

#include "cmera/geometry.hpp"
#include "cmera/profiles.hpp"

namespace cmera {

/// Fixed-step classical RK4 with a halved-step Richardson check.
struct OdeStepControl {
  double ds = 1e-3;
  double s_max = 60.0;
  /// Relative agreement required between the ds and ds/2 solutions.
  double richardson_tol = 1e-8;

  void validate() const;
};

/// L sqrt(k^2 + L^2) / sqrt(e^{-2s} k^2 + L^2), the same expression the
/// batch kernels evaluate.
double beta_magic_closed(double k, double lambda, double s);

/// Integrates d/ds beta = -2 g~(s, k) beta from beta(0, k) = L. The ODE is
/// linear, so log beta = log L - 2 int_0^s g~ ds' is accumulated instead and
/// exponentiated at the end: beta stays positive by construction. On this
/// quadrature RK4 reduces to composite Simpson.
/// Throws StepControlError when |ds g~| > 0.5 anywhere or when the halved
/// step disagrees by more than ctrl.richardson_tol.
double beta_ode_integrate(const EntanglingProfile& profile, double k, double s_final, const OdeStepControl& ctrl = {});

/// beta~_c(s, n) = beta~(s, k_n) on a circle (closed form).
double beta_circle(int n, double lambda, double s, const Geometry& circle);

/// Same coefficient integrated from the wrapped profile's discrete
/// generator g~_c(s', n).
double beta_circle_ode(const WrappedProfile& profile, int n, double s_final, const OdeStepControl& ctrl = {});

double beta_qft(double k, double m);

struct Dispersion {
  double energy;
  double beta;
};

/// P(k) = sum a_l k^{2l}, Q(k) = sum b_l k^{2l}; E = sqrt(Q P), beta =
/// sqrt(Q / P). Throws DomainError unless P > 0 and Q > 0.
Dispersion beta_qft_generic(std::span<const double> a, std::span<const double> b, double k);

class BetaFunction {
 public:
  enum class Kind { Cmera, Qft, GenericQft };
  enum class Strategy { ClosedForm, OdeIntegrated };

  static BetaFunction cmera(double lambda, double s, Geometry geom = Geometry::line(),
                            Strategy strategy = Strategy::ClosedForm, OdeStepControl ctrl = {});
  static BetaFunction qft(double m, Geometry geom = Geometry::line());
  static BetaFunction generic(std::vector<double> a, std::vector<double> b, Geometry geom = Geometry::line());

  Kind kind() const { return kind_; }
  Strategy strategy() const { return strategy_; }
  const Geometry& geometry() const { return geom_; }
  double lambda() const { return lambda_; }
  double s() const { return s_; }
  double mass() const { return m_; }
  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }

  double operator()(double k) const;
  /// Discrete coefficient at mode n (circle geometries).
  double mode(int n) const;
  /// out[i] = beta(k[i]); closed forms go through the SIMD kernels.
  void evaluate(std::span<const double> k, std::span<double> out) const;

  /// "cmera" or "qft" (generic dispersions report "qft").
  std::string source_name() const;

 private:
  BetaFunction() = default;

  Kind kind_ = Kind::Qft;
  Strategy strategy_ = Strategy::ClosedForm;
  Geometry geom_ = Geometry::line();
  double lambda_ = 0.0;
  double s_ = 0.0;
  double m_ = 0.0;
  std::vector<double> a_;
  std::vector<double> b_;
  OdeStepControl ctrl_;
};

}  // namespace cmera
