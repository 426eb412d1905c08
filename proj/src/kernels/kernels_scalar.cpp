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

#include <cmath>

#include "cmera/kernels.hpp"
#include "kernels_internal.hpp"

namespace cmera::kernels::scalar {

double cosine_dot(const double* k, const double* f, const double* w, std::size_t n, double x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * f[i] * std::cos(k[i] * x);
  return acc;
}

void cos_batch(const double* in, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::cos(in[i]);
}

void magic_beta(const double* k, std::size_t n, double lambda, double a, double* out) {
  const double l2 = lambda * lambda;
  const double a2 = a * a;
  for (std::size_t i = 0; i < n; ++i) {
    const double k2 = k[i] * k[i];
    out[i] = lambda * std::sqrt((k2 + l2) / (a2 * k2 + l2));
  }
}

void qft_beta(const double* k, std::size_t n, double m, double* out) {
  const double m2 = m * m;
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(k[i] * k[i] + m2);
}

double cosine_series(const double* c, std::size_t n, std::int64_t n0, double theta) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += c[j] * std::cos(static_cast<double>(n0 + static_cast<std::int64_t>(j)) * theta);
  }
  return acc;
}

}  // namespace cmera::kernels::scalar
