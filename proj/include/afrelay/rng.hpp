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

#include <cstdint>
#include <random>

#include "afrelay/cmatrix.hpp"

namespace afrelay {

/// Explicit random stream. mt19937_64 plus a hand-rolled Box-Muller so the
/// produced sequence is identical across platforms and library versions
/// (std::normal_distribution is implementation-defined). Copyable: a copy
/// replays the same tail, which the simulator uses to feed two receivers
/// identical draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Independent substream addressed by up to three indices; used to make
  /// parallel sweeps schedule-independent.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                    std::uint64_t c = 0);

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal, Box-Muller pair cached.
  double normal();

  /// Circularly-symmetric complex Gaussian with unit total variance:
  /// real and imaginary parts each N(0, 1/2).
  cd cnormal();

  /// One fair bit (drawn from a buffered 64-bit word).
  std::uint8_t bit();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
  std::uint64_t bit_buf_ = 0;
  int bits_left_ = 0;
};

/// m x n matrix of i.i.d. CN(0,1) entries (unit total variance per entry),
/// filled in row-major order.
CMatrix sample_cgaussian(int m, int n, Rng& rng);

}  // namespace afrelay
