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

// AVX2 + FMA variants. Compiled with per-function target attributes so the
// rest of the library stays baseline x86-64.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

#define CMERA_AVX2 __attribute__((target("avx2,fma")))

namespace cmera::kernels::avx2 {

namespace {

// pi/2 split into three 33-bit pieces (fdlibm pio2_1, pio2_2, pio2_3).
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624871116645580e-21;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;

// Beyond this the three-piece reduction loses digits; those lanes go
// through std::cos.
constexpr double kReductionLimit = 1.0e6;

// Minimax coefficients on [-pi/4, pi/4] (Cephes sin.c).
constexpr double kSin[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                            2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                            8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCos[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                            -2.75573141792967388112e-7,  2.48015872888517045348e-5,
                            -1.38888888888730564116e-3,  4.16666666666665929218e-2};

CMERA_AVX2 inline __m256d polevl5(__m256d z, const double* c) {
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[i]));
  return p;
}

CMERA_AVX2 inline __m256d cos_pd(__m256d x) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), polevl5(z, kSin), r);
  const __m256d cos_r = _mm256_fmadd_pd(_mm256_mul_pd(z, z), polevl5(z, kCos),
                                        _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));

  // cos(r + q pi/2): quadrant 0 -> cos r, 1 -> -sin r, 2 -> -cos r, 3 -> sin r.
  const __m256i qi = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d use_sin = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
  const __m256i negate_bits = _mm256_slli_epi64(
      _mm256_and_si256(_mm256_add_epi64(qi, one), two), 62);  // bit 1 -> sign bit
  __m256d result = _mm256_blendv_pd(cos_r, sin_r, use_sin);
  result = _mm256_xor_pd(result, _mm256_castsi256_pd(negate_bits));
  return result;
}

CMERA_AVX2 inline bool needs_fallback(__m256d x) {
  const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  // Also catches NaN (unordered compare).
  const __m256d bad = _mm256_cmp_pd(ax, _mm256_set1_pd(kReductionLimit), _CMP_NLT_UQ);
  return _mm256_movemask_pd(bad) != 0;
}

CMERA_AVX2 inline __m256d cos_pd_safe(__m256d x) {
  if (!needs_fallback(x)) return cos_pd(x);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, x);
  for (double& v : lanes) v = std::cos(v);
  return _mm256_load_pd(lanes);
}

CMERA_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

CMERA_AVX2 double cosine_dot(const double* k, const double* f, const double* w, std::size_t n, double x) {
  const __m256d vx = _mm256_set1_pd(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d arg = _mm256_mul_pd(_mm256_loadu_pd(k + i), vx);
    const __m256d wf = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i));
    acc = _mm256_fmadd_pd(wf, cos_pd_safe(arg), acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += w[i] * f[i] * std::cos(k[i] * x);
  return total;
}

CMERA_AVX2 void cos_batch(const double* in, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, cos_pd_safe(_mm256_loadu_pd(in + i)));
  for (; i < n; ++i) out[i] = std::cos(in[i]);
}

CMERA_AVX2 void magic_beta(const double* k, std::size_t n, double lambda, double a, double* out) {
  const double l2 = lambda * lambda;
  const double a2 = a * a;
  const __m256d vl = _mm256_set1_pd(lambda);
  const __m256d vl2 = _mm256_set1_pd(l2);
  const __m256d va2 = _mm256_set1_pd(a2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d kk = _mm256_loadu_pd(k + i);
    const __m256d k2 = _mm256_mul_pd(kk, kk);
    const __m256d num = _mm256_add_pd(k2, vl2);
    const __m256d den = _mm256_fmadd_pd(va2, k2, vl2);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vl, _mm256_sqrt_pd(_mm256_div_pd(num, den))));
  }
  for (; i < n; ++i) {
    const double k2 = k[i] * k[i];
    out[i] = lambda * std::sqrt((k2 + l2) / (a2 * k2 + l2));
  }
}

CMERA_AVX2 void qft_beta(const double* k, std::size_t n, double m, double* out) {
  const double m2 = m * m;
  const __m256d vm2 = _mm256_set1_pd(m2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d kk = _mm256_loadu_pd(k + i);
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_fmadd_pd(kk, kk, vm2)));
  }
  for (; i < n; ++i) out[i] = std::sqrt(k[i] * k[i] + m2);
}

CMERA_AVX2 double cosine_series(const double* c, std::size_t n, std::int64_t n0, double theta) {
  const __m256d vt = _mm256_set1_pd(theta);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d idx = _mm256_setr_pd(static_cast<double>(n0), static_cast<double>(n0 + 1),
                               static_cast<double>(n0 + 2), static_cast<double>(n0 + 3));
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(c + j), cos_pd_safe(_mm256_mul_pd(idx, vt)), acc);
    idx = _mm256_add_pd(idx, step);
  }
  double total = hsum(acc);
  for (; j < n; ++j) {
    total += c[j] * std::cos(static_cast<double>(n0 + static_cast<std::int64_t>(j)) * theta);
  }
  return total;
}

}  // namespace cmera::kernels::avx2
