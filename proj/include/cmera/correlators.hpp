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

// Two-point functions of Gaussian states. Real-space values use the
// convention C(x) = (1/2pi) int dk e^{ikx} C(k) on the line and
// (1/l_c) sum_n e^{i k_n x} C(k_n) on the circle.
//
// Both real-space routes split C(k) into a power-law asymptote
// sum_p c_p k^p (p = 2..-2) and a remainder. Asymptote terms have exact
// transforms (on the line, distributions supported at x = 0 plus
// -c_1 / (pi x^2); on the circle, closed-form lattice sums); remainders are
// integrated or summed numerically.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cmera/geometry.hpp"
#include "cmera/quadrature.hpp"
#include "cmera/scale_evolution.hpp"

namespace cmera {

enum class Channel { PhiPhi, PiPi, DPhiDPhi };

std::string channel_name(Channel c);
Channel parse_channel(const std::string& name);

/// phi phi: 1/(2 beta); pi pi: beta/2; dphi dphi: k^2/(2 beta).
/// Throws DomainError when beta(k) = 0.
double momentum_correlator(const BetaFunction& beta, Channel channel, double k);

/// Power-law asymptote plus remainder of a momentum-space correlator.
class SpectralDensity {
 public:
  SpectralDensity(const BetaFunction& beta, Channel channel);

  double operator()(double k) const;

  /// Coefficient of k^p for p in {2, 1, 0, -1, -2}.
  double coeff(int p) const { return c_[static_cast<std::size_t>(2 - p)]; }
  /// Whether the asymptote model is exact through k^-2 (false for generic
  /// dispersions, where only the raw density is available).
  bool has_model() const { return has_model_; }

  /// C(k) - c_2 k^2 - c_1 k - c_0: what the line transform integrates.
  double line_remainder(double k) const;
  /// C(k) - sum_p c_p k^p: what the circle mode sum adds up.
  double circle_remainder(double k) const;
  void line_remainder(std::span<const double> k, std::span<double> out) const;

  /// Exponential decay rate of the real-space line correlator.
  double decay_rate() const;
  /// Largest momentum scale of the density.
  double feature_momentum() const;

  const BetaFunction& beta() const { return beta_; }
  Channel channel() const { return channel_; }

 private:
  BetaFunction beta_;
  Channel channel_;
  std::array<double, 5> c_{};
  bool has_model_ = false;
};

struct CorrelatorValue {
  double value = 0.0;
  double error = 0.0;
};

struct LineQuadConfig {
  double rel_tol = 1e-10;
  /// Absolute, in units of the transform's natural size |R(k_f)| k_f / pi
  /// (R the remainder density, k_f its feature momentum).
  double abs_tol = 1e-13;
  /// Relative target of each Gauss-Kronrod panel and of the tail
  /// extrapolation.
  double quad_rel = 1e-12;
};

/// Line correlator at x > 0 by oscillatory quadrature of the remainder.
/// Throws DomainError for x <= 0 and ConvergenceError when the attached
/// error estimate exceeds max(abs_tol scale, rel_tol |value|).
CorrelatorValue line_correlator_real(const BetaFunction& beta, Channel channel, double x,
                                     const LineQuadConfig& cfg = {});

enum class CoincidentKind { Plateau, UvDivergent };

struct CoincidentReport {
  CoincidentKind kind = CoincidentKind::Plateau;
  /// Limit x -> 0+ with the terms supported at x = 0 removed (plateau only).
  double value = 0.0;
  double error = 0.0;
  std::string reason;
};

/// Classifies x -> 0+ on the line: finite plateau for cMERA, divergence for
/// QFT (any k^1 or k^-1 asymptote term).
CoincidentReport line_coincident(const BetaFunction& beta, Channel channel, const LineQuadConfig& cfg = {});
CoincidentReport circle_coincident(const BetaFunction& beta, Channel channel, double tolerance = 1e-12);

/// Closed forms for the QFT ground state on the line (m > 0, x > 0):
/// phi phi  K0(mx) / 2pi
/// pi pi    (m^2 / 4pi) (K0(mx) - K2(mx)) = -m K1(mx) / (2 pi x)
/// dphi dphi -(m^2 / 2pi) (K0(mx) + K1(mx) / (mx))
double qft_line_closed(Channel channel, double m, double x);

struct ModeSumConfig {
  double tolerance = 1e-12;  // absolute, on the remainder tail
  int n_start = 256;
  int n_limit = 1 << 22;
};

/// Circle correlator by the discrete mode sum with symmetric pairing
/// (manifestly real). The k^p asymptote is summed in closed form and the
/// remainder directly; the tail is bounded from the remainder decay order.
/// x = 0 (mod l_c) throws UvDivergence when the sum diverges and returns
/// the x -> 0+ plateau otherwise.
CorrelatorValue circle_correlator_modesum(const BetaFunction& beta, Channel channel, double x,
                                          const ModeSumConfig& cfg = {});

/// Plain truncated mode sum (1/l_c) sum_{|n| <= n_max} e^{i k_n x} C(k_n),
/// no asymptote handling. Kept as a cross-check and to expose divergence.
double circle_correlator_truncated(const BetaFunction& beta, Channel channel, double x, int n_max);

struct ImageSumConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  int max_images = 10000;
};

using LineEvaluator = std::function<CorrelatorValue(double)>;

/// sum_n C_line(x + n l_c) for x in (0, l_c). Terms are added in pairs +-n
/// until the geometric tail estimate |t_n| q / (1 - q), q = e^{-rate l_c},
/// drops below tolerance. Throws PolicyError past max_images or when rate
/// is not positive.
CorrelatorValue circle_correlator_imagesum(const LineEvaluator& line, double rate, double lc, double x,
                                           const ImageSumConfig& cfg = {});

/// Convenience: image sum of the line correlator of the same source (QFT
/// lines use the Bessel closed form).
CorrelatorValue circle_correlator_imagesum(const BetaFunction& beta, Channel channel, double x,
                                           const ImageSumConfig& cfg = {}, const LineQuadConfig& line_cfg = {});

enum class CircleRoute { ModeSum, ImageSum };

struct CorrelatorTable {
  Channel channel = Channel::PhiPhi;
  std::string source;
  Geometry geometry = Geometry::line();
  double lambda = 0.0;
  double s = 0.0;
  double mass = 0.0;
  std::vector<double> x;
  std::vector<double> value;
  std::vector<double> error;
  /// max_x |sum_n sin(k_n x) C(k_n)| / l_c over a symmetric mode window
  /// (circle only; zero on the line).
  double imag_residue = 0.0;

  std::size_t size() const { return x.size(); }
};

struct TableConfig {
  LineQuadConfig line{};
  ModeSumConfig modes{};
  ImageSumConfig images{};
  CircleRoute route = CircleRoute::ImageSum;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Evaluates the correlator on every grid point (in parallel). Line grids
/// must be positive; circle grids may include 0 only for plateau channels.
CorrelatorTable build_correlator_table(const BetaFunction& beta, Channel channel, std::span<const double> x,
                                       const TableConfig& cfg = {});

/// Runs f(i) for i in [0, n) on up to `threads` workers; rethrows the first
/// exception.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

}  // namespace cmera
