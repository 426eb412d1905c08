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

// Method of images: periodic functions on a circle (or torus) built by
// summing translates of a decaying function on the line, and a verifier for
// the sampling identity f_c(n) = f(k_n) between the two Fourier transforms.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cmera {

/// |f(x)| <= prefactor * exp(-rate |x|) for |x| >= 0.
struct DecayCertificate {
  double rate = 0.0;
  double prefactor = 0.0;
};

struct ImageSumPolicy {
  double tolerance = 1e-12;
  int max_images = 10000;

  /// Geometric tail bound for images |n| > N on x in [0, l):
  /// A e^{-a (N-1) l} (1 + e^{-a l}) / (1 - e^{-a l}).
  static double tail_bound(const DecayCertificate& cert, double period, int n);

  /// Smallest N >= 1 whose tail bound is below `tolerance`. Throws
  /// PolicyError when N would exceed max_images.
  int truncation_order(const DecayCertificate& cert, double period) const;

  void validate() const;
};

/// A line function with its decay certificate and, when known, its
/// continuous Fourier transform f(k) = int e^{-ikx} f(x) dx.
struct TestFunction {
  std::string id;
  std::function<double(double)> real;
  std::function<double(double)> momentum;
  DecayCertificate decay;
  bool even = true;

  /// e^{-|x|}, f(k) = 2 / (1 + k^2).
  static TestFunction exponential();
  /// e^{-x^2}, f(k) = sqrt(pi) e^{-k^2/4}.
  static TestFunction gaussian();
};

/// Truncated image sum of a TestFunction on a circle of length `period`.
class PeriodicFunction {
 public:
  PeriodicFunction(TestFunction f, double period, int images, double tail_bound);

  /// sum_{|n| <= N} f(x + n l); x is reduced into [0, l) first.
  double operator()(double x) const;

  double period() const { return period_; }
  int images() const { return images_; }
  double tail_bound() const { return tail_bound_; }
  const TestFunction& base() const { return f_; }

 private:
  TestFunction f_;
  double period_;
  int images_;
  double tail_bound_;
};

PeriodicFunction wrap(const TestFunction& f, double period, const ImageSumPolicy& policy = {});

struct SamplingRow {
  int n = 0;
  double f_c_n = 0.0;  // quadrature of the wrapped function
  double f_kn = 0.0;   // line transform sampled at k_n
  double abs_dev = 0.0;
};

struct SamplingReport {
  std::string function_id;
  double period = 0.0;
  int images = 0;
  std::vector<SamplingRow> rows;
  double max_abs_dev = 0.0;
};

/// For |n| <= n_max: f_c(n) = int_0^l cos(k_n x) f_c(x) dx by Romberg
/// quadrature (f assumed even, so the sine part vanishes), compared with
/// f(k_n). Throws DomainError when f has no known momentum form and
/// ConvergenceError when refinement stalls above quad_tol.
SamplingReport verify_sampling_theorem(const TestFunction& f, double period, int n_max, double quad_tol,
                                       const ImageSumPolicy& policy = {});

/// Converse direction: (1/l) sum_{|n| <= n_max} e^{i k_n x} f(k_n).
double resynthesize_from_samples(const TestFunction& f, double period, double x, int n_max);

/// Separable-or-not function on the plane with a decay certificate applied
/// along each axis (|f(x, y)| <= A e^{-a|x|} e^{-a|y|}).
struct TestFunction2D {
  std::string id;
  std::function<double(double, double)> real;
  DecayCertificate decay;
};

class PeriodicFunction2D {
 public:
  PeriodicFunction2D(TestFunction2D f, double l1, double l2, int n1, int n2);
  double operator()(double x1, double x2) const;
  int images(int axis) const { return axis == 0 ? n1_ : n2_; }

 private:
  TestFunction2D f_;
  double l1_, l2_;
  int n1_, n2_;
};

/// Double image sum on the torus, truncated per axis by the policy.
PeriodicFunction2D wrap_2d(const TestFunction2D& f, double l1, double l2, const ImageSumPolicy& policy = {});

/// Reduce x into [0, period).
double reduce_periodic(double x, double period);

}  // namespace cmera
