// SPDX-License-Identifier: Apache-2.0
//
// afrelay - robust MMSE transceiver design for dual-hop AF MIMO relay links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// AVX2+FMA kernels. Complex doubles are processed two at a time as
// interleaved (re, im) lanes of a __m256d. This translation unit is compiled
// with -mavx2 -mfma and must only be entered after a runtime CPU check.

#include "kernels_impl.hpp"

#if defined(AFRELAY_HAVE_AVX2_TU)

#include <immintrin.h>

#include <cmath>

namespace afrelay::kernels::detail {
namespace {

// prod = aval * b for two complex lanes; aval broadcast as (ar, ai).
// [ar*br - ai*bi, ar*bi + ai*br] via fmaddsub on the lane-swapped vector.
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0x5);  // [im0, re0, im1, re1]
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap));
}

void cgemm_avx2(cd* c, const cd* a, const cd* b,
                std::size_t m, std::size_t k, std::size_t n) {
  double* cr = reinterpret_cast<double*>(c);
  const double* br = reinterpret_cast<const double*>(b);
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = cr + 2 * i * n;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) _mm256_storeu_pd(crow + 2 * j, zero);
    for (; j < n; ++j) {
      crow[2 * j] = 0.0;
      crow[2 * j + 1] = 0.0;
    }
    for (std::size_t l = 0; l < k; ++l) {
      const cd aval = a[i * k + l];
      const __m256d ar = _mm256_set1_pd(aval.real());
      const __m256d ai = _mm256_set1_pd(aval.imag());
      const double* brow = br + 2 * l * n;
      j = 0;
      for (; j + 2 <= n; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j,
                         _mm256_add_pd(cv, cmul_broadcast(ar, ai, bv)));
      }
      for (; j < n; ++j) {
        const double brj = brow[2 * j], bij = brow[2 * j + 1];
        crow[2 * j] += aval.real() * brj - aval.imag() * bij;
        crow[2 * j + 1] += aval.real() * bij + aval.imag() * brj;
      }
    }
  }
}

double sum_abs2_avx2(const cd* x, std::size_t n) {
  const double* xr = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xr + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  lo = _mm_add_pd(lo, hi);
  double out = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) {
    out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return out;
}

std::size_t count_bit_errors_avx2(const cd* symbols, std::size_t n,
                                  const std::uint8_t* ref_bits) {
  const double* sr = reinterpret_cast<const double*>(symbols);
  std::size_t errs = 0;
  std::size_t i = 0;
  // Two symbols per iteration: movmskpd yields the four slicer bits in
  // (re0, im0, re1, im1) order.
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(sr + 2 * i);
    const unsigned mask = static_cast<unsigned>(_mm256_movemask_pd(v));
    const unsigned ref = static_cast<unsigned>(ref_bits[2 * i]) |
                         (static_cast<unsigned>(ref_bits[2 * i + 1]) << 1) |
                         (static_cast<unsigned>(ref_bits[2 * i + 2]) << 2) |
                         (static_cast<unsigned>(ref_bits[2 * i + 3]) << 3);
    errs += static_cast<std::size_t>(__builtin_popcount(mask ^ ref));
  }
  for (; i < n; ++i) {
    const std::uint8_t b0 = std::signbit(symbols[i].real()) ? 1 : 0;
    const std::uint8_t b1 = std::signbit(symbols[i].imag()) ? 1 : 0;
    errs += (b0 != ref_bits[2 * i]) + (b1 != ref_bits[2 * i + 1]);
  }
  return errs;
}

}  // namespace

const KernelTable avx2_table = {cgemm_avx2, sum_abs2_avx2,
                                count_bit_errors_avx2};

}  // namespace afrelay::kernels::detail

#endif  // AFRELAY_HAVE_AVX2_TU
