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

// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against.

#include <cmath>

#include "kernels_impl.hpp"

namespace afrelay::kernels::detail {
namespace {

void cgemm_scalar(cd* c, const cd* a, const cd* b,
                  std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cd(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const cd* arow = a + i * k;
    cd* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cd aval = arow[l];
      const cd* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) {
        // Explicit real/imag update; std::complex operator* has branchy
        // inf/nan handling that the vector variants do not replicate.
        const double ar = aval.real(), ai = aval.imag();
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] += cd(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
}

double sum_abs2_scalar(const cd* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

std::size_t count_bit_errors_scalar(const cd* symbols, std::size_t n,
                                    const std::uint8_t* ref_bits) {
  std::size_t errs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t b0 = std::signbit(symbols[i].real()) ? 1 : 0;
    const std::uint8_t b1 = std::signbit(symbols[i].imag()) ? 1 : 0;
    errs += (b0 != ref_bits[2 * i]) + (b1 != ref_bits[2 * i + 1]);
  }
  return errs;
}

}  // namespace

const KernelTable scalar_table = {cgemm_scalar, sum_abs2_scalar,
                                  count_bit_errors_scalar};

}  // namespace afrelay::kernels::detail
