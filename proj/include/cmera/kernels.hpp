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

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation; an AVX2+FMA variant is compiled with function-level target
// attributes and picked at runtime when the CPU supports it. Setting the
// environment variable CMERA_ISA=scalar forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>

namespace cmera::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  /// sum_i w[i] * f[i] * cos(k[i] * x)
  double (*cosine_dot)(const double* k, const double* f, const double* w, std::size_t n, double x);

  /// out[i] = cos(in[i])
  void (*cos_batch)(const double* in, std::size_t n, double* out);

  /// out[i] = lambda * sqrt(k^2 + lambda^2) / sqrt(a^2 k^2 + lambda^2)
  void (*magic_beta)(const double* k, std::size_t n, double lambda, double a, double* out);

  /// out[i] = sqrt(k^2 + m^2)
  void (*qft_beta)(const double* k, std::size_t n, double m, double* out);

  /// sum_j c[j] * cos((n0 + j) * theta)
  double (*cosine_series)(const double* c, std::size_t n, std::int64_t n0, double theta);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks
/// AVX2/FMA.
const KernelTable* avx2_table();

/// The table in use for this process (resolved once).
const KernelTable& active();

// Span front-ends over the active table.

double cosine_dot(std::span<const double> k, std::span<const double> f, std::span<const double> w,
                  double x);
void cos_batch(std::span<const double> in, std::span<double> out);
void magic_beta(std::span<const double> k, double lambda, double a, std::span<double> out);
void qft_beta(std::span<const double> k, double m, std::span<double> out);
double cosine_series(std::span<const double> c, std::int64_t n0, double theta);

}  // namespace cmera::kernels
