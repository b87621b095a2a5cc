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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "afrelay/kernels.hpp"
#include "afrelay/rng.hpp"

using namespace afrelay;
namespace k = afrelay::kernels;

namespace {

struct BackendGuard {
  k::Backend saved = k::active();
  ~BackendGuard() { k::set_active(saved); }
};

std::vector<cd> random_array(std::size_t n, Rng& rng) {
  std::vector<cd> v(n);
  for (auto& x : v) x = rng.cnormal();
  return v;
}

}  // namespace

TEST_CASE("cgemm matches a hand-computed 2x2 product") {
  // [[1+i, 2], [0, -i]] * [[1, i], [3, -1]]
  const std::vector<cd> a{cd(1, 1), cd(2, 0), cd(0, 0), cd(0, -1)};
  const std::vector<cd> b{cd(1, 0), cd(0, 1), cd(3, 0), cd(-1, 0)};
  std::vector<cd> c(4);
  k::cgemm(c.data(), a.data(), b.data(), 2, 2, 2);
  CHECK(std::abs(c[0] - cd(7, 1)) < 1e-14);
  CHECK(std::abs(c[1] - cd(-3, 1)) < 1e-14);
  CHECK(std::abs(c[2] - cd(0, -3)) < 1e-14);
  CHECK(std::abs(c[3] - cd(0, 1)) < 1e-14);
}

TEST_CASE("backend dispatch reports and switches") {
  BackendGuard guard;
  CHECK(k::supported(k::Backend::scalar));
  k::set_active(k::Backend::scalar);
  CHECK(k::active() == k::Backend::scalar);
  if (k::supported(k::Backend::avx2)) {
    k::set_active(k::Backend::avx2);
    CHECK(k::active() == k::Backend::avx2);
  } else {
    CHECK_THROWS_AS(k::set_active(k::Backend::avx2), std::invalid_argument);
  }
}

TEST_CASE("simd variants agree with the scalar reference") {
  if (!k::supported(k::Backend::avx2)) return;
  BackendGuard guard;
  Rng rng(101);

  // Shapes exercise both the vector body and the odd-column remainders.
  const int shapes[][3] = {{1, 1, 1}, {2, 3, 5}, {4, 4, 4},  {3, 7, 2},
                           {4, 4, 1}, {5, 2, 9}, {8, 8, 17}, {4, 16, 1000}};
  for (const auto& s : shapes) {
    const std::size_t m = s[0], kk = s[1], n = s[2];
    const auto a = random_array(m * kk, rng);
    const auto b = random_array(kk * n, rng);
    std::vector<cd> c_scalar(m * n), c_simd(m * n);
    k::set_active(k::Backend::scalar);
    k::cgemm(c_scalar.data(), a.data(), b.data(), m, kk, n);
    k::set_active(k::Backend::avx2);
    k::cgemm(c_simd.data(), a.data(), b.data(), m, kk, n);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < m * n; ++i) {
      scale = std::max(scale, std::abs(c_scalar[i]));
      diff = std::max(diff, std::abs(c_scalar[i] - c_simd[i]));
    }
    CHECK(diff <= 1e-12 * (1.0 + scale));
  }

  for (std::size_t n : {1u, 2u, 7u, 64u, 1001u}) {
    const auto x = random_array(n, rng);
    k::set_active(k::Backend::scalar);
    const double s0 = k::sum_abs2(x.data(), n);
    k::set_active(k::Backend::avx2);
    const double s1 = k::sum_abs2(x.data(), n);
    CHECK(std::abs(s0 - s1) <= 1e-12 * (1.0 + s0));
  }

  for (std::size_t n : {1u, 2u, 3u, 255u, 1000u}) {
    auto sym = random_array(n, rng);
    std::vector<std::uint8_t> bits(2 * n);
    for (auto& bb : bits) bb = rng.bit();
    k::set_active(k::Backend::scalar);
    const std::size_t e0 = k::count_bit_errors(sym.data(), n, bits.data());
    k::set_active(k::Backend::avx2);
    const std::size_t e1 = k::count_bit_errors(sym.data(), n, bits.data());
    CHECK(e0 == e1);
  }
}

TEST_CASE("count_bit_errors slices by sign bit, negative zero included") {
  BackendGuard guard;
  const std::vector<cd> sym{cd(0.5, -0.25), cd(-0.0, 0.0)};
  // symbol 0 -> bits (0,1); symbol 1: -0.0 has its sign bit set -> (1,0)
  const std::vector<std::uint8_t> exact{0, 1, 1, 0};
  const std::vector<std::uint8_t> wrong{1, 0, 0, 1};
  for (k::Backend b : {k::Backend::scalar, k::Backend::avx2}) {
    if (!k::supported(b)) continue;
    k::set_active(b);
    CHECK(k::count_bit_errors(sym.data(), 2, exact.data()) == 0);
    CHECK(k::count_bit_errors(sym.data(), 2, wrong.data()) == 4);
  }
}

TEST_CASE("sum_abs2 on a known vector") {
  const std::vector<cd> x{cd(3, 4), cd(0, -2)};
  CHECK(k::sum_abs2(x.data(), 2) == doctest::Approx(29.0).epsilon(1e-14));
}
