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

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cmera::quad {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Vectorised integrand: out[i] = f(x[i]).
using BatchFn = std::function<void(std::span<const double> x, std::span<double> out)>;
using ScalarFn = std::function<double(double)>;

BatchFn batched(ScalarFn f);

struct Tolerance {
  double abs = 1e-15;
  double rel = 1e-12;
  int max_subdivisions = 200;

  double target(double value) const;
};

/// 21-point Kronrod abscissae on [-1, 1] (non-negative half, descending) and
/// weights; Gauss weights belong to the odd-indexed abscissae.
struct Gk21Rule {
  static const std::array<double, 11> kNodes;
  static const std::array<double, 11> kKronrodWeights;
  static const std::array<double, 5> kGaussWeights;
};

/// One Gauss-Kronrod panel of f on [a, b]. When `cos_x` is non-null the
/// integrand is multiplied by cos(k * cos_x) through the SIMD kernel.
Estimate gk21_panel(const BatchFn& f, double a, double b, const double* cos_x = nullptr);

/// Globally adaptive GK21 (largest-error bisection).
Estimate integrate(const BatchFn& f, double a, double b, const Tolerance& tol = {});

/// Adaptive integral of f(k) cos(k x) over [a, b].
Estimate integrate_cosine(const BatchFn& f, double x, double a, double b, const Tolerance& tol = {});

/// Integral of f over [a, inf) through k = a + t / (1 - t).
Estimate integrate_semi_infinite(const BatchFn& f, double a, const Tolerance& tol = {});

/// Romberg integration: composite trapezoid with Richardson extrapolation.
/// Throws ConvergenceError when successive diagonal entries have not agreed
/// to `tol` by `max_level` halvings.
Estimate romberg(const ScalarFn& f, double a, double b, double tol, int max_level = 20);

/// Wynn's epsilon algorithm over a running sequence of partial sums.
class WynnEpsilon {
 public:
  explicit WynnEpsilon(std::size_t window = 40) : window_(window) {}

  void push(double partial_sum);
  double estimate() const { return estimate_; }
  /// |e_n - e_{n-1}| + |e_n - e_{n-2}| over the last three estimates.
  double error() const;
  std::size_t size() const { return sums_.size(); }

 private:
  std::size_t window_;
  std::vector<double> sums_;
  std::vector<double> history_;
  double estimate_ = 0.0;
};

struct OscillatoryConfig {
  Tolerance tol{};
  /// Direct (non-extrapolated) integration runs at least up to this momentum.
  double k_split = 0.0;
  int min_tail_terms = 8;
  int max_tail_terms = 600;
};

/// integral_0^inf f(k) cos(k x) dk for x > 0 and f decaying (possibly only
/// like 1/k). The range is cut at the zeros z_j = (j + 1/2) pi / x of the
/// cosine: half-periods up to k_split are integrated directly; the rest is
/// an alternating series summed with Wynn's epsilon algorithm.
Estimate cosine_transform(const BatchFn& f, double x, const OscillatoryConfig& cfg);

}  // namespace cmera::quad
