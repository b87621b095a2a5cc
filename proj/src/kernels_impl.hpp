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

#include "afrelay/kernels.hpp"

// Internal per-backend function tables. Each backend translation unit
// provides one table; dispatch lives in kernels.cpp.

namespace afrelay::kernels::detail {

struct KernelTable {
  void (*cgemm)(cd*, const cd*, const cd*, std::size_t, std::size_t,
                std::size_t);
  double (*sum_abs2)(const cd*, std::size_t);
  std::size_t (*count_bit_errors)(const cd*, std::size_t,
                                  const std::uint8_t*);
};

extern const KernelTable scalar_table;

#if defined(AFRELAY_HAVE_AVX2_TU)
extern const KernelTable avx2_table;
#endif

}  // namespace afrelay::kernels::detail
