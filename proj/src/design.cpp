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

#include "afrelay/design.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "afrelay/linalg.hpp"

namespace afrelay::design {

namespace {

// Pieces of the F-step system that do not depend on lambda.
struct FStepParts {
  HermitianMatrix rx;
  CMatrix base;  // hbar_rd^H g^H g hbar_rd + psi_rd Tr(g sigma_rd g^H)
  CMatrix rhs;   // hbar_rd^H g^H p^H hbar_sr^H rx^{-1}
};

FStepParts f_step_parts(const CMatrix& g, const CMatrix& p,
                        const ChannelModel& model) {
  FStepParts parts{r_x(p, model.stats_sr, model.hbar_sr, model.rn1), {}, {}};
  const CMatrix ghrd = g * model.hbar_rd;
  const double tr_gsg = real_trace(g * model.stats_rd.sigma.mat() * adjoint(g));
  parts.base = adjoint(ghrd) * ghrd + tr_gsg * model.stats_rd.psi.mat();
  const CMatrix c = adjoint(ghrd) * adjoint(p) * adjoint(model.hbar_sr);
  // c * rx^{-1} computed through the Hermitian solve of the adjoint.
  parts.rhs = adjoint(linalg::solve_hpd(parts.rx, adjoint(c)));
  return parts;
}

CMatrix f_from_parts(const FStepParts& parts, double lambda) {
  CMatrix m = parts.base;
  for (int i = 0; i < m.rows(); ++i) m(i, i) += lambda;
  CMatrix l;
  if (!linalg::try_chol(HermitianMatrix(std::move(m)), l)) {
    throw std::runtime_error(
        "f_of_lambda: singular system (use a positive lambda)");
  }
  return linalg::chol_solve(l, parts.rhs);
}

}  // namespace

CMatrix g_step(const CMatrix& f, const CMatrix& p, const ChannelModel& model) {
  const HermitianMatrix rx = r_x(p, model.stats_sr, model.hbar_sr, model.rn1);
  const HermitianMatrix k = k_matrix(f, rx, model.stats_rd, model.rn2);
  const CMatrix hrdf = model.hbar_rd * f;
  CMatrix s = hrdf * rx.mat() * adjoint(hrdf) + k.mat();
  const CMatrix t = hrdf * model.hbar_sr * p;
  CMatrix l;
  if (!linalg::try_chol(HermitianMatrix(std::move(s)), l)) {
    throw std::runtime_error("g_step: receive covariance is singular");
  }
  return adjoint(linalg::chol_solve(l, t));
}

CMatrix f_of_lambda(double lambda, const CMatrix& g, const CMatrix& p,
                    const ChannelModel& model) {
  if (lambda < 0.0) {
    throw std::invalid_argument("f_of_lambda: lambda must be >= 0");
  }
  return f_from_parts(f_step_parts(g, p, model), lambda);
}

double lambda_upper_bound(const CMatrix& g, const CMatrix& p,
                          const ChannelModel& model, double pr) {
  if (!(pr > 0.0)) throw std::invalid_argument("lambda_upper_bound: pr must be > 0");
  const HermitianMatrix rx = r_x(p, model.stats_sr, model.hbar_sr, model.rn1);
  const CMatrix d = model.hbar_sr * p * g * model.hbar_rd;
  const double num = real_trace(adjoint(d) * linalg::solve_hpd(rx, d));
  return std::sqrt(std::max(num, 0.0) / pr);
}

FStep f_step(const CMatrix& g, const CMatrix& p, const ChannelModel& model,
             double pr, double tol) {
  const FStepParts parts = f_step_parts(g, p, model);
  const auto power_at = [&](const CMatrix& f) {
    return relay_tx_power(f, parts.rx);
  };

  // Zero right-hand side (e.g. g = 0): every stationary point is zero.
  if (parts.rhs.norm_fro() == 0.0) {
    return {CMatrix::zeros(model.nr(), model.mr()), 0.0};
  }

  // lambda = 0 branch, unless the unregularized system is singular.
  try {
    CMatrix f0 = f_from_parts(parts, 0.0);
    if (power_at(f0) <= pr * (1.0 + 1e-12)) return {std::move(f0), 0.0};
  } catch (const std::runtime_error&) {
    // fall through to the positive-lambda search
  }

  // Bisection for Tr(f rx f^H) = pr. The analytic bracket end is doubled
  // if it ever fails to enclose the root.
  double hi = lambda_upper_bound(g, p, model, pr);
  if (hi <= 0.0) {
    throw std::runtime_error("f_step: empty bracket with infeasible power");
  }
  CMatrix f_hi = f_from_parts(parts, hi);
  int doublings = 0;
  while (power_at(f_hi) > pr) {
    if (++doublings > 60) {
      throw std::runtime_error("f_step: bracket expansion failed to enclose root");
    }
    hi *= 2.0;
    f_hi = f_from_parts(parts, hi);
  }

  // Drive the residual well below the caller tolerance; the leftover
  // complementary-slackness error is what the alternating loop sees.
  const double target = std::min(tol, 1e-14) * pr;
  double lo = 0.0;
  CMatrix f_mid = f_hi;
  double lambda = hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    f_mid = f_from_parts(parts, mid);
    const double pw = power_at(f_mid);
    lambda = mid;
    if (std::abs(pw - pr) <= target) break;
    if (pw > pr) lo = mid;
    else hi = mid;
    if (hi - lo <= 1e-16 * (1.0 + hi)) break;
  }
  if (power_at(f_mid) > pr * (1.0 + tol)) {
    // Land on the feasible side of the collapsed bracket.
    lambda = hi;
    f_mid = f_from_parts(parts, hi);
  }
  return {std::move(f_mid), lambda};
}

qmp::QmpProblem qmp_params(const CMatrix& f, const CMatrix& g,
                           const ChannelModel& model,
                           const PowerBudget& budget) {
  const int n = model.n_streams;
  const int ns = model.ns();
  const CMatrix ghrd = g * model.hbar_rd;
  const CMatrix m = model.stats_rd.psi.mat() *
                        real_trace(g * model.stats_rd.sigma.mat() * adjoint(g)) +
                    adjoint(ghrd) * ghrd;
  const CMatrix fh = f * model.hbar_sr;
  const CMatrix fsf = f * model.stats_sr.sigma.mat() * adjoint(f);
  const CMatrix frf = f * model.rn1.mat() * adjoint(f);

  qmp::QmpProblem prob;
  prob.a0 = HermitianMatrix(model.stats_sr.psi.mat() * real_trace(fsf * m) +
                            adjoint(fh) * m * fh);
  prob.b0 = -adjoint(ghrd * f * model.hbar_sr);
  const CMatrix r1 = model.stats_rd.sigma.mat() *
                         real_trace(frf * model.stats_rd.psi.mat()) +
                     model.hbar_rd * frf * adjoint(model.hbar_rd);
  prob.c0 = real_trace(g * (r1 + model.rn2.mat()) * adjoint(g)) + n;

  qmp::QmpConstraint source;
  source.a = HermitianMatrix::identity(ns);
  source.b = CMatrix::zeros(ns, n);
  source.c = -budget.ps;

  qmp::QmpConstraint relay;
  relay.a = HermitianMatrix(model.stats_sr.psi.mat() * real_trace(fsf) +
                            adjoint(fh) * fh);
  relay.b = CMatrix::zeros(ns, n);
  relay.c = real_trace(frf) - budget.pr;

  prob.constraints = {std::move(source), std::move(relay)};
  return prob;
}

qmp::QmpSolution p_step(const CMatrix& f, const CMatrix& g,
                        const ChannelModel& model, const PowerBudget& budget,
                        double tol) {
  qmp::QmpProblem prob = qmp_params(f, g, model, budget);
  if (prob.constraints[1].c > 0.0) {
    throw std::runtime_error(
        "p_step: infeasible, relay noise power alone exceeds the relay budget");
  }
  return qmp::solve_dual(prob, tol);
}

DesignResult alternate(const ChannelModel& model, const PowerBudget& budget,
                       const DesignConfig& config) {
  if (!(budget.ps > 0.0) || !(budget.pr > 0.0)) {
    throw std::invalid_argument("alternate: power budget must be positive");
  }
  const int n = model.n_streams;

  // Identity-shaped starts scaled to meet both constraints with equality.
  CMatrix p = CMatrix::identity(model.ns(), n) * std::sqrt(budget.ps / n);
  CMatrix f = CMatrix::identity(model.nr(), model.mr());
  {
    const HermitianMatrix rx0 = r_x(p, model.stats_sr, model.hbar_sr, model.rn1);
    f *= std::sqrt(budget.pr / relay_tx_power(f, rx0));
  }
  CMatrix g = CMatrix::zeros(n, model.md());

  DesignResult out;
  const auto slack_record = [&](int iter, double mse_val, double lambda,
                                double mu1, double mu2) {
    const HermitianMatrix rx = r_x(p, model.stats_sr, model.hbar_sr, model.rn1);
    out.trace.push_back({iter, mse_val, lambda, mu1, mu2,
                         budget.ps - real_trace(p * adjoint(p)),
                         budget.pr - relay_tx_power(f, rx)});
  };

  // Iteration 0: no equalizer yet, MSE = Tr(I_N) = n.
  double prev_mse = static_cast<double>(n);
  slack_record(0, prev_mse, 0.0, 0.0, 0.0);

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    g = g_step(f, p, model);
    FStep fs = f_step(g, p, model, budget.pr, config.tol_power);
    f = std::move(fs.f);
    qmp::QmpSolution ps = p_step(f, g, model, budget, config.tol_power);
    p = std::move(ps.p);

    const double cur = mse({p, f, g}, model);
    if (cur > prev_mse + 1e-9) {
      throw std::runtime_error(
          "alternate: MSE increased across an iteration (implementation bug)");
    }
    slack_record(iter, cur, fs.lambda, ps.mu[0], ps.mu[1]);
    const bool done = std::abs(cur - prev_mse) <= config.tol_mse;
    prev_mse = cur;
    if (done) {
      out.converged = true;
      break;
    }
  }

  out.t = {std::move(p), std::move(f), std::move(g)};
  out.final_mse = prev_mse;
  return out;
}

void write_trace_csv(std::ostream& out, const IterTrace& trace) {
  out << "iteration,mse,lambda,mu1,mu2,slack_ps,slack_pr\n";
  char line[256];
  for (const auto& r : trace) {
    std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  r.iteration, r.mse, r.lambda, r.mu1, r.mu2, r.slack_ps,
                  r.slack_pr);
    out << line;
  }
}

}  // namespace afrelay::design
