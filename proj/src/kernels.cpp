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

// Runtime backend selection for the kernel layer.

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace afrelay::kernels {
namespace {

using detail::KernelTable;

bool host_has_avx2() {
#if defined(AFRELAY_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &detail::scalar_table;
    case Backend::avx2:
#if defined(AFRELAY_HAVE_AVX2_TU)
      return &detail::avx2_table;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

Backend detect_initial() {
  if (const char* env = std::getenv("AFRELAY_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!supported(Backend::avx2)) {
        throw std::invalid_argument(
            "AFRELAY_BACKEND=avx2 requested but AVX2+FMA is unavailable");
      }
      return Backend::avx2;
    }
    // anything else (including "auto") falls through to detection
  }
  return supported(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

const KernelTable& table() {
  const KernelTable* t = g_table.load(std::memory_order_acquire);
  if (t == nullptr) {
    const Backend b = detect_initial();
    g_backend.store(b, std::memory_order_relaxed);
    t = table_for(b);
    g_table.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

const char* name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

bool supported(Backend b) {
  if (b == Backend::scalar) return true;
  return host_has_avx2();
}

Backend active() {
  table();  // force init
  return g_backend.load(std::memory_order_relaxed);
}

void set_active(Backend b) {
  if (!supported(b)) {
    throw std::invalid_argument(std::string("kernel backend unsupported: ") +
                                name(b));
  }
  g_backend.store(b, std::memory_order_relaxed);
  g_table.store(table_for(b), std::memory_order_release);
}

void cgemm(cd* c, const cd* a, const cd* b,
           std::size_t m, std::size_t k, std::size_t n) {
  table().cgemm(c, a, b, m, k, n);
}

double sum_abs2(const cd* x, std::size_t n) { return table().sum_abs2(x, n); }

std::size_t count_bit_errors(const cd* symbols, std::size_t n,
                             const std::uint8_t* ref_bits) {
  return table().count_bit_errors(symbols, n, ref_bits);
}

}  // namespace afrelay::kernels
