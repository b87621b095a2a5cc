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

#include "afrelay/rng.hpp"

#include <cmath>
#include <numbers>

namespace afrelay {

namespace {

// splitmix64 finalizer; decorrelates substream seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                std::uint64_t c) {
  std::uint64_t s = mix(seed);
  s = mix(s ^ mix(a + 0x243f6a8885a308d3ULL));
  s = mix(s ^ mix(b + 0x13198a2e03707344ULL));
  s = mix(s ^ mix(c + 0xa4093822299f31d0ULL));
  return Rng(s);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] x [0,1).
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

cd Rng::cnormal() {
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  const double re = normal();
  const double im = normal();
  return cd(re * inv_sqrt2, im * inv_sqrt2);
}

std::uint8_t Rng::bit() {
  if (bits_left_ == 0) {
    bit_buf_ = next_u64();
    bits_left_ = 64;
  }
  const std::uint8_t b = static_cast<std::uint8_t>(bit_buf_ & 1u);
  bit_buf_ >>= 1;
  --bits_left_;
  return b;
}

CMatrix sample_cgaussian(int m, int n, Rng& rng) {
  CMatrix out(m, n);
  cd* p = out.data();
  const std::size_t count = out.size();
  for (std::size_t i = 0; i < count; ++i) p[i] = rng.cnormal();
  return out;
}

}  // namespace afrelay
