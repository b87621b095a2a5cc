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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "afrelay/channel.hpp"
#include "afrelay/design.hpp"
#include "afrelay/objective.hpp"
#include "afrelay/rng.hpp"

// Link-level Monte-Carlo BER experiment: QPSK streams through sampled true
// channels, robust design against the estimated-channel-only baseline.
// Both designs see identical channel realizations, data bits and noise
// draws (common random numbers), so the comparison is paired.

namespace afrelay::simulate {

/// Gray-mapped unit-energy QPSK: bit pair (b0, b1) ->
/// ((1-2 b0) + i (1-2 b1)) / sqrt(2).
std::vector<cd> qpsk_modulate(const std::vector<std::uint8_t>& bits);

/// Sign slicing per component (sign bit set -> bit 1). Inverse of the
/// modulator on noiseless input.
std::vector<std::uint8_t> qpsk_demodulate(const std::vector<cd>& symbols);

/// One link run over the given true channels: per channel use,
/// y = h_rd f h_sr p s + h_rd f n1 + n2, sliced after the equalizer.
/// bits are stream-major (all bits of stream 0, then stream 1, ...), two
/// per symbol; their count must be divisible by 2 * n_streams. Noise is
/// drawn from rng, n1 before n2, column-major in time. Returns the number
/// of bit errors.
std::uint64_t run_link(const Transceiver& t, const CMatrix& h_sr_true,
                       const CMatrix& h_rd_true, const HermitianMatrix& rn1,
                       const HermitianMatrix& rn2,
                       const std::vector<std::uint8_t>& bits, Rng& rng);

/// Estimated-channel-only baseline: the same alternating design run with
/// both error statistics zeroed.
Transceiver naive_design(const ChannelModel& model, const PowerBudget& budget,
                         const design::DesignConfig& config);

enum class Algo { robust = 0, naive = 1 };
const char* algo_name(Algo a);

struct SweepConfig {
  std::vector<double> snr_rd_db;
  std::vector<double> sigma_e2;
  double snr_sr_db = 30.0;
  double alpha = 0.5;
  double beta = 0.4;
  std::size_t n_symbols = 10000;      // per stream per realization
  std::size_t n_realizations = 100;
  std::uint64_t seed = 1;
  PowerBudget budget{4.0, 4.0};
  std::string preset = "paper-4x4";   // when empty, hbar_* are used
  CMatrix hbar_sr;
  CMatrix hbar_rd;
  int n_streams = 4;
  design::DesignConfig design;
};

struct BerPoint {
  double snr_rd_db = 0.0;
  double sigma_e2 = 0.0;
  Algo algo = Algo::robust;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits_total = 0;
  double ber = 0.0;
};

/// One sweep point: designs both transceivers once (they depend only on
/// the estimated channels and statistics), then aggregates bit errors
/// over n_realizations independent error realizations. point_index keys
/// the random substream, making sweep results schedule-independent.
std::pair<BerPoint, BerPoint> ber_point(const SweepConfig& cfg,
                                        double snr_rd_db, double sigma_e2,
                                        std::size_t point_index);

/// Cartesian product snr_rd_db x sigma_e2 x {robust, naive}; rows in list
/// order, robust before naive; deterministic for a fixed seed.
std::vector<BerPoint> sweep(const SweepConfig& cfg);

/// CSV: snr_rd_db,sigma_e2,algo,bit_errors,bits_total,ber
void write_ber_csv(std::ostream& out, const std::vector<BerPoint>& points);

}  // namespace afrelay::simulate
