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

#include <cstdlib>
#include <string_view>

#include "cmera/kernels.hpp"
#include "kernels_internal.hpp"

namespace cmera::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar,      "scalar",           scalar::cosine_dot,
                              scalar::cos_batch, scalar::magic_beta, scalar::qft_beta,
                              scalar::cosine_series};

#if defined(CMERA_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2,       "avx2",           avx2::cosine_dot, avx2::cos_batch,
                            avx2::magic_beta, avx2::qft_beta, avx2::cosine_series};
#endif

const KernelTable& resolve() {
  if (const char* forced = std::getenv("CMERA_ISA"); forced && std::string_view(forced) == "scalar") {
    return kScalar;
  }
  if (const KernelTable* t = avx2_table()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(CMERA_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = resolve();
  return table;
}

double cosine_dot(std::span<const double> k, std::span<const double> f, std::span<const double> w,
                  double x) {
  return active().cosine_dot(k.data(), f.data(), w.data(), k.size(), x);
}

void cos_batch(std::span<const double> in, std::span<double> out) {
  active().cos_batch(in.data(), in.size(), out.data());
}

void magic_beta(std::span<const double> k, double lambda, double a, std::span<double> out) {
  active().magic_beta(k.data(), k.size(), lambda, a, out.data());
}

void qft_beta(std::span<const double> k, double m, std::span<double> out) {
  active().qft_beta(k.data(), k.size(), m, out.data());
}

double cosine_series(std::span<const double> c, std::int64_t n0, double theta) {
  return active().cosine_series(c.data(), c.size(), n0, theta);
}

}  // namespace cmera::kernels
