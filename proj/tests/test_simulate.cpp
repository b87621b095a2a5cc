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
#include <sstream>

#include "afrelay/simulate.hpp"

using namespace afrelay;
using namespace afrelay::simulate;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.snr_rd_db = {20.0};
  cfg.sigma_e2 = {0.01};
  cfg.n_symbols = 500;
  cfg.n_realizations = 10;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("qpsk mapping convention") {
  const auto syms = qpsk_modulate({0, 0, 1, 1, 0, 1, 1, 0});
  const double inv = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(syms[0] - cd(inv, inv)) < 1e-15);
  CHECK(std::abs(syms[1] - cd(-inv, -inv)) < 1e-15);
  CHECK(std::abs(syms[2] - cd(inv, -inv)) < 1e-15);
  CHECK(std::abs(syms[3] - cd(-inv, inv)) < 1e-15);
  for (const cd& s : syms) CHECK(std::norm(s) == doctest::Approx(1.0));
  CHECK_THROWS_AS(qpsk_modulate({0, 1, 0}), std::invalid_argument);
}

TEST_CASE("qpsk demodulation slices by sign") {
  const double inv = 1.0 / std::sqrt(2.0);
  const auto bits = qpsk_demodulate({cd(inv, inv), cd(-0.9, 0.1)});
  CHECK(bits == std::vector<std::uint8_t>{0, 0, 1, 0});

  Rng rng(157);
  std::vector<std::uint8_t> tx(10000);
  for (auto& b : tx) b = rng.bit();
  CHECK(qpsk_demodulate(qpsk_modulate(tx)) == tx);
}

TEST_CASE("run_link is error-free on a clean link and deterministic") {
  // Perfect CSI, essentially noiseless, converged design on the preset.
  const ChannelPreset chans = channel_preset("paper-4x4");
  const ChannelModel model = build_model(
      chans.hbar_sr, chans.hbar_rd, {0.5, 0.4, 0.0}, 140.0, 140.0, 4.0, 4.0, 4);
  design::DesignConfig cfg;
  cfg.max_iters = 200;
  const Transceiver t = design::alternate(model, {4.0, 4.0}, cfg).t;

  Rng bits_rng(163);
  std::vector<std::uint8_t> bits(10000);  // 1250 uses x 4 streams x 2 bits
  for (auto& b : bits) b = bits_rng.bit();

  Rng r1(167), r2(167);
  const auto e1 = run_link(t, model.hbar_sr, model.hbar_rd, model.rn1,
                           model.rn2, bits, r1);
  const auto e2 = run_link(t, model.hbar_sr, model.hbar_rd, model.rn1,
                           model.rn2, bits, r2);
  CHECK(e1 == 0);
  CHECK(e1 == e2);

  CHECK_THROWS_AS(run_link(t, model.hbar_sr, model.hbar_rd, model.rn1,
                           model.rn2, std::vector<std::uint8_t>(10), r1),
                  std::invalid_argument);
}

TEST_CASE("zero equalizer yields coin-flip BER") {
  const ChannelPreset chans = channel_preset("paper-4x4");
  const ChannelModel model = build_model(
      chans.hbar_sr, chans.hbar_rd, {0.5, 0.4, 0.0}, 30.0, 20.0, 4.0, 4.0, 4);
  const Transceiver t{CMatrix::identity(4), CMatrix::identity(4),
                      CMatrix::zeros(4, 4)};
  std::vector<std::uint8_t> bits(100000);
  Rng rng(173);
  for (auto& b : bits) b = rng.bit();
  const auto errs = run_link(t, model.hbar_sr, model.hbar_rd, model.rn1,
                             model.rn2, bits, rng);
  const double ber = static_cast<double>(errs) / bits.size();
  CHECK(ber > 0.49);
  CHECK(ber < 0.51);
}

TEST_CASE("naive design dominates in robust MSE and tracks budget growth") {
  const ChannelPreset chans = channel_preset("paper-4x4");
  const ChannelModel model = build_model(
      chans.hbar_sr, chans.hbar_rd, {0.5, 0.4, 0.05}, 30.0, 20.0, 4.0, 4.0, 4);
  design::DesignConfig cfg;
  cfg.max_iters = 400;
  const Transceiver robust = design::alternate(model, {4.0, 4.0}, cfg).t;
  const Transceiver naive = naive_design(model, {4.0, 4.0}, cfg);
  // the robust minimizer is no worse under the robust objective
  CHECK(mse(robust, model) <= mse(naive, model) + 1e-9);

  // doubling the source budget never hurts the converged naive design
  const ChannelModel zero = with_zero_errors(model);
  const double m1 = design::alternate(zero, {4.0, 4.0}, cfg).final_mse;
  const double m2 = design::alternate(zero, {8.0, 4.0}, cfg).final_mse;
  CHECK(m2 <= m1 + 1e-9);
}

TEST_CASE("ber_point: zero error gives identical robust and naive rows") {
  SweepConfig cfg = small_config();
  cfg.sigma_e2 = {0.0};
  const auto [robust, naive] = ber_point(cfg, 20.0, 0.0, 0);
  CHECK(robust.bit_errors == naive.bit_errors);
  CHECK(robust.bits_total == naive.bits_total);
  CHECK(robust.bits_total == 2ull * 4 * cfg.n_symbols * cfg.n_realizations);
  CHECK(robust.ber == naive.ber);
}

TEST_CASE("ber_point is deterministic in the seed and point index") {
  const SweepConfig cfg = small_config();
  const auto a = ber_point(cfg, 20.0, 0.01, 3);
  const auto b = ber_point(cfg, 20.0, 0.01, 3);
  CHECK(a.first.bit_errors == b.first.bit_errors);
  CHECK(a.second.bit_errors == b.second.bit_errors);
  const auto c = ber_point(cfg, 20.0, 0.01, 4);
  CHECK((a.first.bit_errors != c.first.bit_errors ||
         a.second.bit_errors != c.second.bit_errors));
}

TEST_CASE("sweep cardinality, ordering and determinism") {
  SweepConfig cfg = small_config();
  cfg.snr_rd_db = {15.0, 20.0};
  cfg.sigma_e2 = {0.0, 0.01};
  const auto points = sweep(cfg);
  CHECK(points.size() == 8);
  // list order: snr outer, sigma inner, robust before naive
  CHECK(points[0].snr_rd_db == 15.0);
  CHECK(points[0].sigma_e2 == 0.0);
  CHECK(points[0].algo == Algo::robust);
  CHECK(points[1].algo == Algo::naive);
  CHECK(points[3].sigma_e2 == 0.01);
  CHECK(points[4].snr_rd_db == 20.0);

  const auto again = sweep(cfg);
  std::stringstream s1, s2;
  write_ber_csv(s1, points);
  write_ber_csv(s2, again);
  CHECK(s1.str() == s2.str());

  std::string header;
  std::getline(s1, header);
  CHECK(header == "snr_rd_db,sigma_e2,algo,bit_errors,bits_total,ber");
}

TEST_CASE("sweep rejects empty lists") {
  SweepConfig cfg = small_config();
  cfg.snr_rd_db.clear();
  CHECK_THROWS_AS(sweep(cfg), std::invalid_argument);
}

TEST_CASE("robust design beats the baseline where estimation errors bite") {
  SweepConfig cfg = small_config();
  cfg.n_symbols = 4000;
  cfg.n_realizations = 40;
  const auto [rb, nv] = ber_point(cfg, 25.0, 0.01, 0);
  const double noise =
      2.0 * std::sqrt(rb.ber * (1.0 - rb.ber) / rb.bits_total +
                      nv.ber * (1.0 - nv.ber) / nv.bits_total);
  CHECK(rb.ber <= nv.ber + noise);
  CHECK(nv.ber > 0.0);  // errors actually occur at this operating point
}
