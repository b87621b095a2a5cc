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

#include "afrelay/design.hpp"
#include "afrelay/linalg.hpp"
#include "afrelay/objective.hpp"
#include "afrelay/validate.hpp"

using namespace afrelay;

namespace {

// 1x1 system: hbar = 1 on both hops, unit noises, no estimation error.
ChannelModel scalar_model() {
  const CMatrix one{{cd(1, 0)}};
  const ErrorStats none{HermitianMatrix::zero(1), HermitianMatrix::zero(1)};
  return make_model(one, one, none, none, HermitianMatrix::identity(1),
                    HermitianMatrix::identity(1), 1);
}

ChannelModel paper_model(double sigma_e2, double snr_rd_db = 20.0) {
  const ChannelPreset chans = channel_preset("paper-4x4");
  return build_model(chans.hbar_sr, chans.hbar_rd, {0.5, 0.4, sigma_e2}, 30.0,
                     snr_rd_db, 4.0, 4.0, 4);
}

}  // namespace

TEST_CASE("pi_p zero-error reduction and scalar case") {
  const ChannelModel m = paper_model(0.01);
  const ErrorStats none{HermitianMatrix::zero(4), HermitianMatrix::zero(4)};
  Rng rng(43);
  const CMatrix p = validate::random_matrix(4, 4, rng);
  CHECK(max_abs_diff(pi_p(p, none, m.hbar_sr),
                     m.hbar_sr * p * adjoint(p) * adjoint(m.hbar_sr)) < 1e-13);

  const ChannelModel s = scalar_model();
  const CMatrix one{{cd(1, 0)}};
  CHECK(pi_p(one, s.stats_sr, s.hbar_sr)(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("pi_p Monte-Carlo oracle, including a mutation it must catch") {
  const ChannelModel m = paper_model(0.01);
  const CMatrix p = CMatrix::identity(4);
  {
    Rng rng(47);
    const auto res = validate::check_pi_p_oracle(m, p, 20000, rng);
    CHECK(res.pass);
  }
  {
    // flipped sign on the error-average term: the oracle must flag it
    Rng rng(47);
    const auto res = validate::check_pi_p_oracle(
        m, p, 20000, rng,
        [](const CMatrix& pp, const ErrorStats& st, const CMatrix& hbar) {
          const CMatrix pph = pp * adjoint(pp);
          const double w = real_trace(pph * st.psi.mat());
          return HermitianMatrix(-w * st.sigma.mat() +
                                 hbar * pph * adjoint(hbar));
        });
    CHECK_FALSE(res.pass);
  }
}

TEST_CASE("r_x properties") {
  const ChannelModel m = paper_model(0.01);
  CHECK(max_abs_diff(r_x(CMatrix::zeros(4, 4), m.stats_sr, m.hbar_sr, m.rn1),
                     m.rn1.mat()) == 0.0);

  const ChannelModel s = scalar_model();
  const CMatrix one{{cd(1, 0)}};
  CHECK(r_x(one, s.stats_sr, s.hbar_sr, s.rn1)(0, 0).real() ==
        doctest::Approx(2.0));

  Rng rng(53);
  const CMatrix p = validate::random_matrix(4, 4, rng);
  const HermitianMatrix rx = r_x(p, m.stats_sr, m.hbar_sr, m.rn1);
  CHECK(linalg::min_eigenvalue(rx) >=
        linalg::min_eigenvalue(m.rn1) - 1e-12);
}

TEST_CASE("k_matrix reductions and independent formula") {
  const ChannelModel m = paper_model(0.01);
  Rng rng(59);
  const CMatrix p = validate::random_matrix(4, 4, rng);
  const HermitianMatrix rx = r_x(p, m.stats_sr, m.hbar_sr, m.rn1);

  const ErrorStats none{HermitianMatrix::zero(4), HermitianMatrix::zero(4)};
  CHECK(max_abs_diff(k_matrix(CMatrix::identity(4), rx, none, m.rn2),
                     m.rn2.mat()) == 0.0);
  CHECK(max_abs_diff(k_matrix(CMatrix::zeros(4, 4), rx, m.stats_rd, m.rn2),
                     m.rn2.mat()) == 0.0);

  // independent evaluation: entrywise trace accumulation
  const CMatrix f = validate::random_matrix(4, 4, rng);
  const CMatrix frf = f * rx.mat() * adjoint(f);
  cd tr(0, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) tr += frf(i, j) * m.stats_rd.psi(j, i);
  const CMatrix expect = tr.real() * m.stats_rd.sigma.mat() + m.rn2.mat();
  CHECK(max_abs_diff(k_matrix(f, rx, m.stats_rd, m.rn2), expect) < 1e-12);
}

TEST_CASE("mse closed form: trivial and scalar values") {
  const ChannelModel m = paper_model(0.01);
  Rng rng(61);
  Transceiver t{validate::random_matrix(4, 4, rng),
                validate::random_matrix(4, 4, rng), CMatrix::zeros(4, 4)};
  CHECK(mse(t, m) == doctest::Approx(4.0));

  const ChannelModel s = scalar_model();
  const Transceiver ts{CMatrix{{cd(1, 0)}}, CMatrix{{cd(1, 0)}},
                       CMatrix{{cd(1.0 / 3.0, 0)}}};
  CHECK(mse(ts, s) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("mse equals the Monte-Carlo estimate within 4 standard errors") {
  const ChannelModel m = paper_model(0.01);
  Rng rng(67);
  const auto res = validate::check_mse_consistency(m, 5, 20000, rng);
  CHECK(res.pass);
}

TEST_CASE("monte-carlo agrees with the closed form at the zero-error LMMSE design") {
  const ChannelModel z = with_zero_errors(paper_model(0.01));
  design::DesignConfig cfg;
  const Transceiver t = design::alternate(z, {4.0, 4.0}, cfg).t;
  const double closed = mse(t, z);
  Rng rng(101);
  const MonteCarloMse mc = mse_monte_carlo(t, z, 50000, rng);
  CHECK(std::abs(closed - mc.estimate) <= 4.0 * mc.std_error);
}

TEST_CASE("mse is nonnegative and reduces to perfect-CSI form at zero error") {
  const ChannelModel m = paper_model(0.01);
  const ChannelModel z = with_zero_errors(m);
  Rng rng(71);
  for (int i = 0; i < 10; ++i) {
    Transceiver t{validate::random_matrix(4, 4, rng),
                  validate::random_matrix(4, 4, rng),
                  validate::random_matrix(4, 4, rng, 0.3)};
    CHECK(mse(t, m) >= 0.0);

    // separately coded perfect-CSI expression
    const CMatrix hp = z.hbar_rd * t.f;
    const CMatrix rx = z.hbar_sr * t.p * adjoint(t.p) * adjoint(z.hbar_sr) +
                       z.rn1.mat();
    const CMatrix chain = t.g * z.hbar_rd * t.f * z.hbar_sr * t.p;
    const double direct =
        real_trace(t.g * (hp * rx * adjoint(hp) + z.rn2.mat()) * adjoint(t.g)) +
        4.0 - 2.0 * chain.trace().real();
    CHECK(mse(t, z) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("monotone in the error scale: scaled sigma never shrinks eigenvalues") {
  const ChannelModel m = paper_model(0.01);
  Rng rng(73);
  const CMatrix p = validate::random_matrix(4, 4, rng);
  const ErrorStats big{HermitianMatrix(2.0 * m.stats_sr.sigma.mat()),
                       m.stats_sr.psi};
  CMatrix gap = pi_p(p, big, m.hbar_sr).mat() -
                pi_p(p, m.stats_sr, m.hbar_sr).mat();
  CHECK(linalg::min_eigenvalue(HermitianMatrix(std::move(gap))) > -1e-12);
}

TEST_CASE("monte-carlo standard error scales like 1/sqrt(trials)") {
  const ChannelModel m = paper_model(0.01);
  Rng rng(79);
  Transceiver t{validate::random_matrix(4, 4, rng),
                validate::random_matrix(4, 4, rng),
                validate::random_matrix(4, 4, rng, 0.3)};
  Rng r1(83), r2(83);
  const MonteCarloMse small = mse_monte_carlo(t, m, 1000, r1);
  const MonteCarloMse large = mse_monte_carlo(t, m, 100000, r2);
  const double ratio = small.std_error / large.std_error;
  CHECK(ratio > 5.0);   // expect ~10
  CHECK(ratio < 20.0);

  Rng r3(89);
  const MonteCarloMse one = mse_monte_carlo(t, m, 1, r3);
  CHECK(one.std_error == 0.0);
  CHECK(std::isfinite(one.estimate));
}

TEST_CASE("relay_tx_power values") {
  const ChannelModel s = scalar_model();
  const CMatrix one{{cd(1, 0)}};
  const HermitianMatrix rx = r_x(one, s.stats_sr, s.hbar_sr, s.rn1);
  CHECK(relay_tx_power(CMatrix{{cd(1.5, 0)}}, rx) == doctest::Approx(4.5));
  CHECK(relay_tx_power(CMatrix::zeros(1, 1), rx) == 0.0);

  const ChannelModel m = paper_model(0.01);
  Rng rng(97);
  const CMatrix p = validate::random_matrix(4, 4, rng);
  const HermitianMatrix rx4 = r_x(p, m.stats_sr, m.hbar_sr, m.rn1);
  CHECK(relay_tx_power(CMatrix::identity(4), rx4) ==
        doctest::Approx(rx4.mat().trace().real()));
}
