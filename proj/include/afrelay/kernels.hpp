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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Low-level complex-double array kernels with runtime backend selection.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active backend is chosen once at startup (highest
// supported level, overridable via the AFRELAY_BACKEND environment variable
// or set_active()). SIMD variants are equivalence-tested against the scalar
// reference; they may differ from it in the last bits due to FMA contraction
// and reassociated reductions.

namespace afrelay::kernels {

using cd = std::complex<double>;

enum class Backend { scalar = 0, avx2 = 1 };

const char* name(Backend b);
bool supported(Backend b);

// Currently active backend. First call initializes from AFRELAY_BACKEND
// ("scalar", "avx2", "auto") or CPU detection.
Backend active();

// Force a backend. Throws std::invalid_argument if unsupported on this host.
void set_active(Backend b);

// c = a * b for row-major dense complex matrices; c is m x n, a is m x k,
// b is k x n. c must not alias a or b.
void cgemm(cd* c, const cd* a, const cd* b,
           std::size_t m, std::size_t k, std::size_t n);

// sum of |x_i|^2
double sum_abs2(const cd* x, std::size_t n);

// Hard-decision QPSK slicing against reference bits. Symbol i carries bits
// (ref_bits[2i], ref_bits[2i+1]); the slicer maps a component to bit 1 iff
// its sign bit is set. Returns the number of mismatched bits.
std::size_t count_bit_errors(const cd* symbols, std::size_t n,
                             const std::uint8_t* ref_bits);

}  // namespace afrelay::kernels
