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

#include "afrelay/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <atomic>
#include <mutex>
#include <thread>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "afrelay/kernels.hpp"
#include "afrelay/linalg.hpp"

namespace afrelay::simulate {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

std::vector<cd> qpsk_modulate(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 2 != 0) {
    throw std::invalid_argument("qpsk_modulate: odd number of bits");
  }
  std::vector<cd> out(bits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = cd((1.0 - 2.0 * bits[2 * i]) * kInvSqrt2,
                (1.0 - 2.0 * bits[2 * i + 1]) * kInvSqrt2);
  }
  return out;
}

std::vector<std::uint8_t> qpsk_demodulate(const std::vector<cd>& symbols) {
  std::vector<std::uint8_t> out(symbols.size() * 2);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    out[2 * i] = std::signbit(symbols[i].real()) ? 1 : 0;
    out[2 * i + 1] = std::signbit(symbols[i].imag()) ? 1 : 0;
  }
  return out;
}

std::uint64_t run_link(const Transceiver& t, const CMatrix& h_sr_true,
                       const CMatrix& h_rd_true, const HermitianMatrix& rn1,
                       const HermitianMatrix& rn2,
                       const std::vector<std::uint8_t>& bits, Rng& rng) {
  const int n = t.g.rows();
  if (n < 1 || bits.size() % (2 * static_cast<std::size_t>(n)) != 0) {
    throw std::invalid_argument(
        "run_link: bit count must be divisible by 2 * n_streams");
  }
  const std::size_t uses = bits.size() / (2 * static_cast<std::size_t>(n));
  const int tn = static_cast<int>(uses);

  // Stream-major bits fill the symbol matrix row-major: entry (i, tau) is
  // the tau-th symbol of stream i.
  CMatrix s(n, tn);
  {
    cd* sp = s.data();
    for (std::size_t k = 0; k < static_cast<std::size_t>(n) * uses; ++k) {
      sp[k] = cd((1.0 - 2.0 * bits[2 * k]) * kInvSqrt2,
                 (1.0 - 2.0 * bits[2 * k + 1]) * kInvSqrt2);
    }
  }

  const CMatrix g_hrd_f = t.g * h_rd_true * t.f;
  const CMatrix through = g_hrd_f * h_sr_true * t.p;  // n x n
  const CMatrix n1 =
      linalg::hermitian_sqrt(rn1) * sample_cgaussian(rn1.dim(), tn, rng);
  const CMatrix n2 =
      linalg::hermitian_sqrt(rn2) * sample_cgaussian(rn2.dim(), tn, rng);
  const CMatrix s_hat = through * s + g_hrd_f * n1 + t.g * n2;

  return kernels::count_bit_errors(s_hat.data(), s_hat.size(), bits.data());
}

Transceiver naive_design(const ChannelModel& model, const PowerBudget& budget,
                         const design::DesignConfig& config) {
  return design::alternate(with_zero_errors(model), budget, config).t;
}

const char* algo_name(Algo a) {
  return a == Algo::robust ? "robust" : "naive";
}

namespace {

ChannelPreset resolve_channels(const SweepConfig& cfg) {
  if (!cfg.preset.empty()) return channel_preset(cfg.preset);
  if (cfg.hbar_sr.size() == 0 || cfg.hbar_rd.size() == 0) {
    throw std::invalid_argument("sweep: no preset and no channel matrices");
  }
  return {cfg.hbar_sr, cfg.hbar_rd};
}

}  // namespace

std::pair<BerPoint, BerPoint> ber_point(const SweepConfig& cfg,
                                        double snr_rd_db, double sigma_e2,
                                        std::size_t point_index) {
  if (cfg.n_symbols < 1 || cfg.n_realizations < 1) {
    throw std::invalid_argument("ber_point: counts must be >= 1");
  }
  const ChannelPreset chans = resolve_channels(cfg);
  const ChannelModel model = build_model(
      chans.hbar_sr, chans.hbar_rd, {cfg.alpha, cfg.beta, sigma_e2},
      cfg.snr_sr_db, snr_rd_db, cfg.budget.ps, cfg.budget.pr, cfg.n_streams);

  // Designs depend only on the estimated channels and the statistics, so
  // they are computed once and reused across realizations.
  const Transceiver robust = design::alternate(model, cfg.budget, cfg.design).t;
  const Transceiver naive = naive_design(model, cfg.budget, cfg.design);

  const std::size_t n = static_cast<std::size_t>(cfg.n_streams);
  const std::size_t bits_per_real = 2 * n * cfg.n_symbols;
  std::uint64_t errs_robust = 0;
  std::uint64_t errs_naive = 0;
  std::vector<std::uint8_t> bits(bits_per_real);

  for (std::size_t r = 0; r < cfg.n_realizations; ++r) {
    Rng rng = Rng::derive(cfg.seed, point_index, r);
    const CMatrix h_sr = true_channel(model.hbar_sr, model.stats_sr, rng);
    const CMatrix h_rd = true_channel(model.hbar_rd, model.stats_rd, rng);
    for (auto& b : bits) b = rng.bit();
    // Identical noise draws for both receivers: copies replay the stream.
    Rng rng_rob = rng;
    Rng rng_nai = rng;
    errs_robust += run_link(robust, h_sr, h_rd, model.rn1, model.rn2, bits, rng_rob);
    errs_naive += run_link(naive, h_sr, h_rd, model.rn1, model.rn2, bits, rng_nai);
  }

  const std::uint64_t total = bits_per_real * cfg.n_realizations;
  const auto mk = [&](Algo a, std::uint64_t errs) {
    return BerPoint{snr_rd_db, sigma_e2, a, errs, total,
                    static_cast<double>(errs) / static_cast<double>(total)};
  };
  return {mk(Algo::robust, errs_robust), mk(Algo::naive, errs_naive)};
}

std::vector<BerPoint> sweep(const SweepConfig& cfg) {
  if (cfg.snr_rd_db.empty() || cfg.sigma_e2.empty()) {
    throw std::invalid_argument("sweep: empty snr or sigma_e2 list");
  }
  struct Point {
    double snr;
    double sig;
    std::size_t index;
  };
  std::vector<Point> points;
  std::size_t idx = 0;
  for (double snr : cfg.snr_rd_db) {
    for (double sig : cfg.sigma_e2) points.push_back({snr, sig, idx++});
  }

  // Points are independent work units keyed by (seed, point index), so the
  // execution schedule cannot change the result. A small worker pool pulls
  // points off a shared counter; results land in index order.
  std::vector<std::pair<BerPoint, BerPoint>> results(points.size());
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                            points.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= points.size()) return;
        try {
          results[i] = ber_point(cfg, points[i].snr, points[i].sig,
                                 points[i].index);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<BerPoint> out;
  out.reserve(2 * points.size());
  for (auto& pair : results) {
    out.push_back(std::move(pair.first));
    out.push_back(std::move(pair.second));
  }
  return out;
}

void write_ber_csv(std::ostream& out, const std::vector<BerPoint>& points) {
  out << "snr_rd_db,sigma_e2,algo,bit_errors,bits_total,ber\n";
  char line[192];
  for (const auto& p : points) {
    std::snprintf(line, sizeof(line), "%.10g,%.10g,%s,%llu,%llu,%.10g\n",
                  p.snr_rd_db, p.sigma_e2, algo_name(p.algo),
                  static_cast<unsigned long long>(p.bit_errors),
                  static_cast<unsigned long long>(p.bits_total), p.ber);
    out << line;
  }
}

}  // namespace afrelay::simulate
