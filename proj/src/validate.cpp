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

#include "afrelay/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "afrelay/design.hpp"
#include "afrelay/qmp.hpp"

namespace afrelay::validate {

namespace {

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

// Finite-difference gradient of the MSE with respect to the real and
// imaginary parts of g; returns the Euclidean norm over all components.
double mse_gradient_norm_g(const Transceiver& t, const ChannelModel& model,
                           double h) {
  Transceiver w = t;
  double sum = 0.0;
  for (int i = 0; i < w.g.rows(); ++i) {
    for (int j = 0; j < w.g.cols(); ++j) {
      const cd orig = w.g(i, j);
      for (int part = 0; part < 2; ++part) {
        const cd delta = part == 0 ? cd(h, 0.0) : cd(0.0, h);
        w.g(i, j) = orig + delta;
        const double up = mse(w, model);
        w.g(i, j) = orig - delta;
        const double dn = mse(w, model);
        w.g(i, j) = orig;
        const double d = (up - dn) / (2.0 * h);
        sum += d * d;
      }
    }
  }
  return std::sqrt(sum);
}

}  // namespace

CMatrix random_matrix(int rows, int cols, Rng& rng, double scale) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = scale * rng.cnormal();
  }
  return m;
}

CheckResult check_pi_p_oracle(const ChannelModel& model, const CMatrix& p,
                              std::size_t samples, Rng& rng,
                              const PiPFn& pi_fn) {
  const HermitianMatrix expected =
      pi_fn ? pi_fn(p, model.stats_sr, model.hbar_sr)
            : pi_p(p, model.stats_sr, model.hbar_sr);
  const int m = model.mr();
  CMatrix mean(m, m);
  std::vector<double> sq(static_cast<std::size_t>(m) * m, 0.0);
  const ErrorSampler sampler(model.stats_sr);
  for (std::size_t s = 0; s < samples; ++s) {
    const CMatrix h = model.hbar_sr + sampler.sample(rng);
    const CMatrix hp = h * p;
    const CMatrix v = hp * adjoint(hp);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        mean(i, j) += v(i, j);
        sq[static_cast<std::size_t>(i) * m + j] += std::norm(v(i, j));
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(samples);
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const cd mu = mean(i, j) * inv;
      const double var =
          std::max(sq[static_cast<std::size_t>(i) * m + j] * inv - std::norm(mu), 0.0);
      const double se = std::sqrt(var * inv) + 1e-12;
      worst = std::max(worst, std::abs(mu - expected(i, j)) / se);
    }
  }
  return {"pi-p-error-average", worst <= 3.0, worst, 3.0,
          fmt("worst entry deviation %.3g standard errors (limit %.3g)", worst, 3.0)};
}

CheckResult check_mse_consistency(const ChannelModel& model, int transceivers,
                                  std::size_t trials, Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < transceivers; ++i) {
    Transceiver t{random_matrix(model.ns(), model.n_streams, rng, 0.6),
                  random_matrix(model.nr(), model.mr(), rng, 0.6),
                  random_matrix(model.n_streams, model.md(), rng, 0.3)};
    const double closed = mse(t, model);
    const MonteCarloMse mc = mse_monte_carlo(t, model, trials, rng);
    worst = std::max(worst, std::abs(closed - mc.estimate) / mc.std_error);
  }
  return {"mse-closed-form-vs-monte-carlo", worst <= 4.0, worst, 4.0,
          fmt("worst |closed - sampled| %.3g standard errors (limit %.3g)",
              worst, 4.0)};
}

CheckResult check_g_step_gradient(const ChannelModel& model, int instances,
                                  Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const CMatrix f = random_matrix(model.nr(), model.mr(), rng, 0.6);
    const CMatrix p = random_matrix(model.ns(), model.n_streams, rng, 0.6);
    const CMatrix g = design::g_step(f, p, model);
    const Transceiver at_g{p, f, g};
    const Transceiver at_zero{p, f, CMatrix::zeros(model.n_streams, model.md())};
    const double norm_at_g = mse_gradient_norm_g(at_g, model, 1e-5);
    const double norm_at_zero = mse_gradient_norm_g(at_zero, model, 1e-5);
    worst = std::max(worst, norm_at_g / (1.0 + norm_at_zero));
  }
  return {"g-step-stationarity", worst <= 1e-6, worst, 1e-6,
          fmt("worst relative gradient norm %.3g (limit %.3g)", worst, 1e-6)};
}

CheckResult check_f_step_kkt(const ChannelModel& model, double pr,
                             int instances, Rng& rng) {
  double worst_cs = 0.0;
  bool feasible = true;
  for (int i = 0; i < instances; ++i) {
    const CMatrix g = random_matrix(model.n_streams, model.md(), rng, 0.5);
    const CMatrix p = random_matrix(model.ns(), model.n_streams, rng, 0.7);
    const design::FStep fs = design::f_step(g, p, model, pr, 1e-8);
    const HermitianMatrix rx = r_x(p, model.stats_sr, model.hbar_sr, model.rn1);
    const double pw = relay_tx_power(fs.f, rx);
    feasible = feasible && pw <= pr * (1.0 + 1e-8) && fs.lambda >= 0.0;
    worst_cs = std::max(worst_cs, fs.lambda * std::abs(pw - pr));
  }
  return {"f-step-kkt", feasible && worst_cs <= 1e-6, worst_cs, 1e-6,
          fmt("worst complementary slackness %.3g (limit %.3g)", worst_cs,
              1e-6) +
              (feasible ? "" : "; power feasibility violated")};
}

CheckResult check_f_lambda_monotone(const ChannelModel& model, double pr,
                                    int instances, Rng& rng) {
  double min_drop = 1e300;
  bool bracket_ok = true;  // power at the analytic bound must fit the budget
  for (int i = 0; i < instances; ++i) {
    const CMatrix g = random_matrix(model.n_streams, model.md(), rng, 0.5);
    const CMatrix p = random_matrix(model.ns(), model.n_streams, rng, 0.7);
    const double bound = design::lambda_upper_bound(g, p, model, pr);
    if (bound <= 0.0) continue;
    const HermitianMatrix rx = r_x(p, model.stats_sr, model.hbar_sr, model.rn1);
    double prev = 0.0;
    bool have_prev = false;
    for (int k = 0; k < 100; ++k) {
      const double lambda = bound * k / 99.0;
      double pw = 0.0;
      try {
        pw = relay_tx_power(design::f_of_lambda(lambda, g, p, model), rx);
      } catch (const std::runtime_error&) {
        continue;  // singular grid start; the search never evaluates it
      }
      if (have_prev) min_drop = std::min(min_drop, prev - pw);
      prev = pw;
      have_prev = true;
      if (k == 99) bracket_ok = bracket_ok && pw <= pr * (1.0 + 1e-12);
    }
  }
  return {"f-lambda-monotone", min_drop > 0.0 && bracket_ok, min_drop, 0.0,
          fmt("smallest grid decrement %.3g (must stay positive, %.0g)",
              min_drop, 0.0) +
              (bracket_ok ? "; bracket endpoint feasible"
                          : "; BRACKET ENDPOINT INFEASIBLE")};
}

CheckResult check_p_step_optimality(const ChannelModel& model,
                                    const PowerBudget& budget, int instances,
                                    int feasible_samples, Rng& rng) {
  double worst = 0.0;
  for (int inst = 0; inst < instances; ++inst) {
    const CMatrix g = random_matrix(model.n_streams, model.md(), rng, 0.5);
    const CMatrix p0 = random_matrix(model.ns(), model.n_streams, rng, 0.7);
    const design::FStep fs = design::f_step(g, p0, model, budget.pr, 1e-8);
    const qmp::QmpProblem prob = design::qmp_params(fs.f, g, model, budget);
    const qmp::QmpSolution sol = qmp::solve_dual(prob, 1e-10);
    worst = std::max(worst, sol.kkt_residual);
    worst = std::max(worst, qmp::certify_sdr_gap(prob, sol));
    const double opt = sol.objective;
    for (int s = 0; s < feasible_samples; ++s) {
      const CMatrix q = random_matrix(model.ns(), model.n_streams, rng, 1.0);
      double tmax = 1e300;
      for (std::size_t ci = 0; ci < prob.constraints.size(); ++ci) {
        const double quad = qmp::constraint_value(prob, ci, q) -
                            prob.constraints[ci].c;
        if (quad > 0.0) {
          tmax = std::min(tmax,
                          std::sqrt(std::max(-prob.constraints[ci].c, 0.0) / quad));
        }
      }
      const CMatrix cand = q * (rng.uniform() * tmax);
      worst = std::max(worst, opt - qmp::qmp_objective(prob, cand));
    }
  }
  return {"p-step-optimality", worst <= 1e-6, worst, 1e-6,
          fmt("worst of KKT residual / duality gap / sampled-point excess "
              "%.3g (limit %.3g)", worst, 1e-6)};
}

CheckResult check_sdr_lift(const ChannelModel& model, const PowerBudget& budget,
                           int lift_checks, Rng& rng) {
  const CMatrix g = random_matrix(model.n_streams, model.md(), rng, 0.5);
  const CMatrix f = random_matrix(model.nr(), model.mr(), rng, 0.5);
  const qmp::QmpProblem prob = design::qmp_params(f, g, model, budget);
  const qmp::SdrLift lift = qmp::sdr_lift(prob);
  double worst = 0.0;
  for (int s = 0; s < lift_checks; ++s) {
    const CMatrix p = random_matrix(model.ns(), model.n_streams, rng, 1.0);
    const HermitianMatrix x = qmp::lift_point(p);
    const double o0 = real_trace(lift.omega0.mat() * x.mat());
    const double d0 = qmp::qmp_objective(prob, p);
    worst = std::max(worst, std::abs(o0 - d0) / (1.0 + std::abs(d0)));
    const double o1 = real_trace(lift.omega1.mat() * x.mat());
    const double d1 = qmp::constraint_value(prob, 0, p);
    worst = std::max(worst, std::abs(o1 - d1) / (1.0 + std::abs(d1)));
    const double o2 = real_trace(lift.omega2.mat() * x.mat());
    const double d2 = qmp::constraint_value(prob, 1, p);
    worst = std::max(worst, std::abs(o2 - d2) / (1.0 + std::abs(d2)));
  }
  return {"sdr-lift-consistency", worst <= 1e-10, worst, 1e-10,
          fmt("worst relative lift mismatch %.3g (limit %.3g)", worst, 1e-10)};
}

// Monotone non-increasing MSE on all error levels; prompt termination is
// asserted where the alternation actually has it on this channel pair
// (sigma_e2 = 0.01; the smaller error levels converge but need several
// hundred sweeps, see the acceptance suite).
CheckResult check_alternate_convergence(const PowerBudget& budget) {
  const ChannelPreset chans = channel_preset("paper-4x4");
  double worst_rise = 0.0;
  bool ok = true;
  std::string note;
  int iters_001 = 0;
  for (double sig : {0.0, 0.002, 0.01}) {
    try {
      const ChannelModel model =
          build_model(chans.hbar_sr, chans.hbar_rd, {0.5, 0.4, sig}, 30.0,
                      10.0, budget.ps, budget.pr, 4);
      const design::DesignResult res =
          design::alternate(model, budget, design::DesignConfig{});
      if (sig == 0.01) {
        iters_001 = static_cast<int>(res.trace.size()) - 1;
        ok = ok && res.converged;
      }
      for (std::size_t i = 1; i < res.trace.size(); ++i) {
        worst_rise = std::max(worst_rise,
                              res.trace[i].mse - res.trace[i - 1].mse);
      }
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
  }
  ok = ok && worst_rise <= 1e-9;
  return {"alternate-convergence", ok, worst_rise, 1e-9,
          note.empty() ? fmt("max MSE rise %.3g (limit %.3g); sigma 0.01 "
                             "converged in ",
                             worst_rise, 1e-9) +
                             std::to_string(iters_001) + " sweeps"
                       : note};
}

std::vector<CheckResult> run_validation(const ValidateOptions& opts) {
  const ChannelPreset chans = channel_preset("paper-4x4");
  const PowerBudget budget{4.0, 4.0};
  const ChannelModel model =
      build_model(chans.hbar_sr, chans.hbar_rd, {0.5, 0.4, 0.01}, 30.0, 20.0,
                  budget.ps, budget.pr, 4);

  std::vector<CheckResult> out;
  {
    Rng rng = Rng::derive(opts.seed, 1);
    const CMatrix p = CMatrix::identity(model.ns(), model.n_streams) *
                      std::sqrt(budget.ps / model.n_streams);
    out.push_back(check_pi_p_oracle(model, p, opts.pi_p_samples, rng));
  }
  {
    Rng rng = Rng::derive(opts.seed, 2);
    out.push_back(check_mse_consistency(model, opts.mse_transceivers,
                                        opts.mse_trials, rng));
  }
  {
    Rng rng = Rng::derive(opts.seed, 3);
    out.push_back(check_g_step_gradient(model, opts.gradient_checks, rng));
  }
  {
    Rng rng = Rng::derive(opts.seed, 4);
    out.push_back(check_f_step_kkt(model, budget.pr, opts.f_step_instances, rng));
  }
  {
    Rng rng = Rng::derive(opts.seed, 5);
    out.push_back(
        check_f_lambda_monotone(model, budget.pr, opts.f_step_instances, rng));
  }
  {
    Rng rng = Rng::derive(opts.seed, 6);
    out.push_back(check_p_step_optimality(model, budget, opts.p_step_instances,
                                          opts.feasible_samples, rng));
  }
  {
    Rng rng = Rng::derive(opts.seed, 7);
    out.push_back(check_sdr_lift(model, budget, opts.lift_checks, rng));
  }
  out.push_back(check_alternate_convergence(budget));
  return out;
}

}  // namespace afrelay::validate
