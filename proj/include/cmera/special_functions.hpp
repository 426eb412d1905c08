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

namespace cmera {

/// Accuracy knobs for the modified Bessel functions K_0, K_1, K_2.
///
/// Below `switchover` the ascending (logarithmic) power series is summed;
/// at and above it Steed's continued fraction for K_0/K_1 is used. Both are
/// convergent, so the switchover is a cost choice, not an accuracy one.
struct BesselAccuracy {
  double abs_tol = 1e-12;
  double switchover = 2.0;

  /// abs_tol in (0, 1e-6], switchover > 0.
  void validate() const;
};

/// K_order(x) for order in {0, 1, 2} and x > 0. K_2 comes from the
/// recurrence K_2 = K_0 + 2 K_1 / x.
double bessel_k(int order, double x, const BesselAccuracy& acc = {});

struct BesselK01 {
  double k0;
  double k1;
};

/// K_0 and K_1 together (both branches produce the pair at once).
BesselK01 bessel_k01(double x, const BesselAccuracy& acc = {});

namespace detail {

/// Ascending series; accurate for small and moderate x.
BesselK01 bessel_k01_series(double x, double rel_tol);

/// Steed's continued fraction (CF2); accurate for x >~ 1.
BesselK01 bessel_k01_continued_fraction(double x, double rel_tol);

}  // namespace detail

/// sum_{n in Z} exp(-|a + n b|) = cosh(b/2 - a) / sinh(b/2) for a in [0, b].
/// Evaluated as (e^{-a} + e^{-(b-a)}) / (1 - e^{-b}), which cannot overflow.
double wrapped_exponential_sum(double a, double b);

}  // namespace cmera
