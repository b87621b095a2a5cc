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
#include <stdexcept>

#include "afrelay/channel.hpp"
#include "afrelay/linalg.hpp"

using namespace afrelay;

namespace {

CMatrix random_cmatrix(int r, int c, Rng& rng) {
  CMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.cnormal();
  return m;
}

}  // namespace

TEST_CASE("exp_correlation entries and definiteness") {
  const HermitianMatrix r = exp_correlation(4, 0.5);
  CHECK(r(0, 1).real() == doctest::Approx(0.5));
  CHECK(r(0, 3).real() == doctest::Approx(0.125));
  for (int i = 0; i < 4; ++i) CHECK(r(i, i).real() == doctest::Approx(1.0));

  CHECK(max_abs_diff(exp_correlation(4, 0.0), CMatrix::identity(4)) == 0.0);
  CHECK(linalg::min_eigenvalue(exp_correlation(4, 0.4)) > 0.0);
  CHECK_THROWS_AS(exp_correlation(4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(exp_correlation(4, -0.1), std::invalid_argument);
}

TEST_CASE("error_stats closed forms") {
  const HermitianMatrix rt = exp_correlation(4, 0.5);

  const ErrorStats zero = error_stats(0.0, rt, exp_correlation(4, 0.4));
  CHECK(zero.sigma.mat().norm_fro() == 0.0);
  CHECK(max_abs_diff(zero.psi, rt) == 0.0);

  const ErrorStats white = error_stats(0.01, rt, HermitianMatrix::identity(4));
  CHECK(max_abs_diff(white.sigma,
                     CMatrix::identity(4) * (0.01 / 1.01)) < 1e-15);

  // independent route: eigendecomposition of R_R instead of two inverses
  const HermitianMatrix rr = exp_correlation(4, 0.4);
  const ErrorStats stats = error_stats(0.01, rt, rr);
  const linalg::Eigh e = linalg::eigh(rr);
  CMatrix expect(4, 4);
  for (int j = 0; j < 4; ++j) {
    const double gain = 0.01 / (1.0 + 0.01 / e.w[j]);
    for (int i = 0; i < 4; ++i) expect(i, j) = e.v(i, j) * gain;
  }
  expect = expect * adjoint(e.v);
  CHECK(max_abs_diff(stats.sigma, expect) < 1e-12);
}

TEST_CASE("error_stats sigma dominated by sigma_e2") {
  const HermitianMatrix rt = exp_correlation(4, 0.5);
  for (double rho : {0.0, 0.4, 0.9}) {
    for (double s2 : {1e-3, 0.01, 0.1}) {
      const ErrorStats st = error_stats(s2, rt, exp_correlation(4, rho));
      CMatrix gap = CMatrix::identity(4) * s2 - st.sigma.mat();
      CHECK(linalg::min_eigenvalue(HermitianMatrix(std::move(gap))) > -1e-12);
    }
  }
}

TEST_CASE("sample_error moments match the covariance model") {
  Rng rng(31);
  const ErrorStats zero{HermitianMatrix::zero(3), exp_correlation(2, 0.5)};
  CHECK(sample_error(zero, rng).norm_fro() == 0.0);

  const ErrorStats st = error_stats(0.05, exp_correlation(3, 0.5),
                                    exp_correlation(3, 0.4));
  const ErrorSampler sampler(st);
  const std::size_t n = 20000;
  CMatrix mean(3, 3);
  // E[dH A dH^H] accumulation for a random Hermitian PSD A
  const CMatrix broot = random_cmatrix(3, 3, rng);
  const HermitianMatrix a(broot * adjoint(broot));
  CMatrix quad(3, 3);
  std::vector<double> sq(9, 0.0), sqq(9, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const CMatrix dh = sampler.sample(rng);
    mean += dh;
    const CMatrix q = dh * a.mat() * adjoint(dh);
    quad += q;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        sq[i * 3 + j] += std::norm(dh(i, j));
        sqq[i * 3 + j] += std::norm(q(i, j));
      }
  }
  const double inv = 1.0 / n;
  const CMatrix expected = real_trace(a.mat() * st.psi.mat()) * st.sigma.mat();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double se_mean =
          std::sqrt(std::max(sq[i * 3 + j] * inv, 1e-30) * inv);
      CHECK(std::abs(mean(i, j) * inv) <= 4.0 * se_mean + 1e-12);
      const double var_q = std::max(
          sqq[i * 3 + j] * inv - std::norm(quad(i, j) * inv), 0.0);
      const double se_q = std::sqrt(var_q * inv) + 1e-12;
      CHECK(std::abs(quad(i, j) * inv - expected(i, j)) <= 4.0 * se_q);
    }
  }
}

TEST_CASE("true_channel reduces to hbar at zero error and has the right covariance") {
  Rng rng(37);
  const ChannelPreset chans = channel_preset("paper-4x4");
  const ErrorStats zero{HermitianMatrix::zero(4), HermitianMatrix::zero(4)};
  CHECK(max_abs_diff(true_channel(chans.hbar_sr, zero, rng), chans.hbar_sr) == 0.0);

  const ErrorStats st = error_stats(0.01, exp_correlation(4, 0.5),
                                    exp_correlation(4, 0.4));
  CHECK_THROWS_AS(true_channel(CMatrix::zeros(3, 4), st, rng),
                  std::invalid_argument);

  // sample covariance of vec(dH) vs kron(conj(psi), sigma)
  const std::size_t n = 30000;
  const ErrorSampler sampler(st);
  CMatrix cov(16, 16);
  for (std::size_t t = 0; t < n; ++t) {
    const CMatrix dh = true_channel(chans.hbar_sr, st, rng) - chans.hbar_sr;
    const CMatrix v = vec(dh);
    cov += v * adjoint(v);
  }
  cov *= cd(1.0 / n, 0.0);
  const CMatrix expected = kron(conj(st.psi.mat()), st.sigma.mat());
  CHECK((cov - expected).norm_fro() <= 0.05 * expected.norm_fro());
}

TEST_CASE("noise_from_snr definition") {
  CHECK(max_abs_diff(noise_from_snr(4.0, 30.0, 4),
                     CMatrix::identity(4) * 0.001) < 1e-18);
  CHECK(max_abs_diff(noise_from_snr(4.0, 0.0, 4), CMatrix::identity(4)) == 0.0);
  CHECK(max_abs_diff(noise_from_snr(4.0, 10.0, 4),
                     CMatrix::identity(4) * 0.1) < 1e-16);
  CHECK_THROWS_AS(noise_from_snr(0.0, 10.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(noise_from_snr(1.0, 10.0, 0), std::invalid_argument);
}

TEST_CASE("paper preset values") {
  const ChannelPreset chans = channel_preset("paper-4x4");
  CHECK(chans.hbar_sr(0, 0) == cd(1.02, 0.82));
  CHECK(chans.hbar_sr(3, 3) == cd(-0.63, 0.73));
  CHECK(chans.hbar_rd(0, 0) == cd(1.01, -1.22));
  CHECK(chans.hbar_rd(3, 2) == cd(-0.00, 0.62));
  CHECK(chans.hbar_rd(1, 1) == cd(1.05, -0.06));
  CHECK_THROWS_AS(channel_preset("nope"), std::invalid_argument);
}

TEST_CASE("matrix text format round trip") {
  Rng rng(41);
  const CMatrix m = random_cmatrix(3, 5, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  const CMatrix back = read_matrix(ss);
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 5);
  CHECK(max_abs_diff(m, back) == 0.0);  // %.17g round-trips doubles

  std::stringstream manual("1.5-2i 3\n-0.25+0.5i 0 # trailing comment\n");
  const CMatrix parsed = read_matrix(manual);
  CHECK(parsed(0, 0) == cd(1.5, -2.0));
  CHECK(parsed(0, 1) == cd(3.0, 0.0));
  CHECK(parsed(1, 0) == cd(-0.25, 0.5));

  std::stringstream ragged("1 2\n3\n");
  CHECK_THROWS_AS(read_matrix(ragged), std::invalid_argument);
  std::stringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_matrix(empty), std::invalid_argument);
}

TEST_CASE("make_model enforces invariants") {
  const ChannelPreset chans = channel_preset("paper-4x4");
  const ErrorStats sr = error_stats(0.01, exp_correlation(4, 0.5),
                                    exp_correlation(4, 0.4));
  CHECK_THROWS_AS(make_model(chans.hbar_sr, chans.hbar_rd, sr, sr,
                             HermitianMatrix::identity(4),
                             HermitianMatrix::identity(4), 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_model(chans.hbar_sr, chans.hbar_rd, sr, sr,
                             HermitianMatrix::zero(4),
                             HermitianMatrix::identity(4), 4),
                  std::invalid_argument);

  const ChannelModel m = build_model(chans.hbar_sr, chans.hbar_rd,
                                     {0.5, 0.4, 0.01}, 30.0, 20.0, 4.0, 4.0, 4);
  CHECK(m.ns() == 4);
  CHECK(m.rn1(0, 0).real() == doctest::Approx(0.001));

  const ChannelModel z = with_zero_errors(m);
  CHECK(z.stats_sr.sigma.mat().norm_fro() == 0.0);
  CHECK(z.stats_rd.psi.mat().norm_fro() == 0.0);
  CHECK(max_abs_diff(z.hbar_sr, m.hbar_sr) == 0.0);
}
