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

#include <cstddef>
#include <cstdint>

namespace cmera::kernels {

namespace scalar {
double cosine_dot(const double* k, const double* f, const double* w, std::size_t n, double x);
void cos_batch(const double* in, std::size_t n, double* out);
void magic_beta(const double* k, std::size_t n, double lambda, double a, double* out);
void qft_beta(const double* k, std::size_t n, double m, double* out);
double cosine_series(const double* c, std::size_t n, std::int64_t n0, double theta);
}  // namespace scalar

#if defined(CMERA_HAVE_AVX2)
namespace avx2 {
double cosine_dot(const double* k, const double* f, const double* w, std::size_t n, double x);
void cos_batch(const double* in, std::size_t n, double* out);
void magic_beta(const double* k, std::size_t n, double lambda, double a, double* out);
void qft_beta(const double* k, std::size_t n, double m, double* out);
double cosine_series(const double* c, std::size_t n, std::int64_t n0, double theta);
}  // namespace avx2
#endif

}  // namespace cmera::kernels
