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

#include "afrelay/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "afrelay/kernels.hpp"
#include "afrelay/linalg.hpp"

namespace afrelay {

HermitianMatrix pi_p(const CMatrix& p, const ErrorStats& stats_sr,
                     const CMatrix& hbar_sr) {
  if (p.rows() != hbar_sr.cols() || stats_sr.psi.dim() != p.rows() ||
      stats_sr.sigma.dim() != hbar_sr.rows()) {
    throw std::invalid_argument("pi_p: dimensions mismatch");
  }
  const CMatrix pph = p * adjoint(p);
  const double w = real_trace(pph * stats_sr.psi);
  return HermitianMatrix(w * stats_sr.sigma.mat() + hbar_sr * pph * adjoint(hbar_sr));
}

HermitianMatrix r_x(const CMatrix& p, const ErrorStats& stats_sr,
                    const CMatrix& hbar_sr, const HermitianMatrix& rn1) {
  return HermitianMatrix(pi_p(p, stats_sr, hbar_sr).mat() + rn1.mat());
}

HermitianMatrix k_matrix(const CMatrix& f, const HermitianMatrix& rx,
                         const ErrorStats& stats_rd,
                         const HermitianMatrix& rn2) {
  if (f.cols() != rx.dim() || stats_rd.psi.dim() != f.rows()) {
    throw std::invalid_argument("k_matrix: dimensions mismatch");
  }
  const double w = real_trace(f * rx.mat() * adjoint(f) * stats_rd.psi);
  return HermitianMatrix(w * stats_rd.sigma.mat() + rn2.mat());
}

double mse(const Transceiver& t, const ChannelModel& model) {
  const int n = model.n_streams;
  const HermitianMatrix rx = r_x(t.p, model.stats_sr, model.hbar_sr, model.rn1);
  const HermitianMatrix k = k_matrix(t.f, rx, model.stats_rd, model.rn2);
  const CMatrix hrd_f = model.hbar_rd * t.f;
  const CMatrix inner = hrd_f * rx.mat() * adjoint(hrd_f) + k.mat();
  const CMatrix cross = t.g * model.hbar_rd * t.f * model.hbar_sr * t.p;

  const cd total = (t.g * inner * adjoint(t.g)).trace() + cd(n, 0.0) -
                   std::conj(cross.trace()) - cross.trace();
  if (std::abs(total.imag()) > 1e-10 * (1.0 + std::abs(total.real()))) {
    throw std::runtime_error("mse: unexpected imaginary residue");
  }
  return total.real();
}

MonteCarloMse mse_monte_carlo(const Transceiver& t, const ChannelModel& model,
                              std::size_t trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("mse_monte_carlo: trials must be >= 1");
  const int n = model.n_streams;
  const ErrorSampler sampler_sr(model.stats_sr);
  const ErrorSampler sampler_rd(model.stats_rd);
  const CMatrix sqrt_rn1 = linalg::hermitian_sqrt(model.rn1);
  const CMatrix sqrt_rn2 = linalg::hermitian_sqrt(model.rn2);
  const CMatrix eye_n = CMatrix::identity(n);

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    // Draw order per trial: dH_sr, dH_rd, s, n1, n2.
    const CMatrix h_sr = model.hbar_sr + sampler_sr.sample(rng);
    const CMatrix h_rd = model.hbar_rd + sampler_rd.sample(rng);
    const CMatrix s = sample_cgaussian(n, 1, rng);
    const CMatrix n1 = sqrt_rn1 * sample_cgaussian(model.mr(), 1, rng);
    const CMatrix n2 = sqrt_rn2 * sample_cgaussian(model.md(), 1, rng);

    const CMatrix g_hrd_f = t.g * h_rd * t.f;
    const CMatrix err = (g_hrd_f * h_sr * t.p - eye_n) * s + g_hrd_f * n1 + t.g * n2;
    const double e2 = kernels::sum_abs2(err.data(), err.size());
    sum += e2;
    sum_sq += e2 * e2;
  }
  const double mean = sum / static_cast<double>(trials);
  double se = 0.0;
  if (trials > 1) {
    const double var =
        (sum_sq - sum * mean) / static_cast<double>(trials - 1);
    se = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
  }
  return {mean, se};
}

double relay_tx_power(const CMatrix& f, const HermitianMatrix& rx) {
  return real_trace(f * rx.mat() * adjoint(f));
}

}  // namespace afrelay
