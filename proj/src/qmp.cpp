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

#include "afrelay/qmp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "afrelay/linalg.hpp"

namespace afrelay::qmp {

namespace {

// Hermitian quadratic forms are real; the imaginary residue only carries
// solve roundoff (large mid-ascent, where the inner system can be nearly
// singular), so it is dropped rather than validated here.
double quad_form(const HermitianMatrix& a, const CMatrix& p) {
  return (adjoint(p) * a.mat() * p).trace().real();
}

HermitianMatrix combined(const QmpProblem& prob, const std::vector<double>& mu) {
  CMatrix a = prob.a0.mat();
  for (std::size_t i = 0; i < prob.constraints.size(); ++i) {
    if (mu[i] != 0.0) a += mu[i] * prob.constraints[i].a.mat();
  }
  return HermitianMatrix(std::move(a));
}

void require_homogeneous(const QmpProblem& prob) {
  for (const auto& con : prob.constraints) {
    if (con.b.norm_fro() != 0.0) {
      throw std::invalid_argument(
          "solve_dual: constraints must have zero linear term");
    }
  }
}

// Minimum-norm solve of a x = b for Hermitian PSD a: eigenvalues below
// 1e-12 of the largest are truncated. A plain factorization is unusable
// here: near the mu = 0 boundary the Lagrangian Hessian can be singular
// with b orthogonal to its null space only up to roundoff, and 1/mu
// amplification of that roundoff makes the constraint values chaotic.
CMatrix pinv_solve(const HermitianMatrix& a, const CMatrix& b) {
  const linalg::Eigh e = linalg::eigh(a);
  const int n = a.dim();
  double wmax = 0.0;
  for (double w : e.w) wmax = std::max(wmax, std::abs(w));
  if (wmax <= 0.0) {
    throw std::runtime_error("pinv_solve: zero Lagrangian Hessian");
  }
  const double cut = 1e-12 * wmax;
  const CMatrix proj = adjoint(e.v) * b;
  CMatrix scaled(n, proj.cols());
  for (int i = 0; i < n; ++i) {
    const double w = e.w[i];
    if (w <= cut) continue;
    for (int j = 0; j < proj.cols(); ++j) scaled(i, j) = proj(i, j) / w;
  }
  return e.v * scaled;
}

struct DualEval {
  CMatrix p;
  double g = 0.0;           // Lagrangian value at the inner minimizer
  std::vector<double> h;    // constraint values (dual gradient)
};

DualEval eval_dual(const QmpProblem& prob, const std::vector<double>& mu) {
  DualEval e;
  e.p = inner_minimizer(prob, mu);
  e.g = qmp_objective(prob, e.p);
  e.h.resize(prob.constraints.size());
  for (std::size_t i = 0; i < prob.constraints.size(); ++i) {
    e.h[i] = constraint_value(prob, i, e.p);
    e.g += mu[i] * e.h[i];
  }
  return e;
}

// dh_j / dmu_i = -2 Re Tr(P^H A_j A(mu)^{-1} A_i P), the (negated) dual
// Hessian, used by the Newton polish on the active set.
std::vector<std::vector<double>> dual_jacobian(const QmpProblem& prob,
                                               const std::vector<double>& mu,
                                               const CMatrix& p) {
  const std::size_t k = prob.constraints.size();
  const HermitianMatrix a = combined(prob, mu);
  std::vector<CMatrix> ainv_ai_p(k);
  for (std::size_t i = 0; i < k; ++i) {
    ainv_ai_p[i] = pinv_solve(a, prob.constraints[i].a.mat() * p);
  }
  std::vector<std::vector<double>> jac(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    const CMatrix aj_p = prob.constraints[j].a.mat() * p;
    for (std::size_t i = 0; i < k; ++i) {
      // Only the real part enters; the cross trace itself is complex.
      jac[j][i] = -2.0 * (adjoint(ainv_ai_p[i]) * aj_p).trace().real();
    }
  }
  return jac;
}

// Drive the active constraint values to zero with a safeguarded Newton
// iteration on the multipliers; projected gradient alone stalls around
// 1e-8 relative residuals because the ascent increments drop below the
// floating-point resolution of the dual value.
void newton_polish(const QmpProblem& prob, std::vector<double>& mu) {
  const std::size_t k = prob.constraints.size();
  if (k == 0 || k > 2) return;
  std::vector<double> scale(k);
  for (std::size_t i = 0; i < k; ++i) {
    scale[i] = std::max(1.0, std::abs(prob.constraints[i].c));
  }

  for (int rounds = 0; rounds < 8; ++rounds) {
    DualEval e = eval_dual(prob, mu);
    std::vector<bool> active(k);
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      active[i] = mu[i] > 0.0 || e.h[i] > -1e-7 * scale[i];
      any = any || active[i];
    }
    if (!any) return;  // interior optimum, mu = 0 exact

    bool changed_set = false;
    for (int it = 0; it < 60 && !changed_set; ++it) {
      e = eval_dual(prob, mu);
      double worst = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (active[i]) worst = std::max(worst, std::abs(e.h[i]) / scale[i]);
        else if (e.h[i] > 1e-12 * scale[i]) {
          active[i] = true;  // inactive constraint went violated
          changed_set = true;
        }
      }
      if (changed_set) break;
      if (worst <= 1e-13) return;

      const auto jac = dual_jacobian(prob, mu, e.p);
      // Solve J_AA * delta = -h_A on the active set.
      std::vector<double> delta(k, 0.0);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < k; ++i) {
        if (active[i]) idx.push_back(i);
      }
      if (idx.size() == 1) {
        const double j00 = jac[idx[0]][idx[0]];
        if (j00 >= 0.0) return;  // lost curvature; keep current iterate
        delta[idx[0]] = -e.h[idx[0]] / j00;
      } else {
        const double a11 = jac[idx[0]][idx[0]], a12 = jac[idx[0]][idx[1]];
        const double a21 = jac[idx[1]][idx[0]], a22 = jac[idx[1]][idx[1]];
        const double det = a11 * a22 - a12 * a21;
        if (det == 0.0) return;
        delta[idx[0]] = (-e.h[idx[0]] * a22 + e.h[idx[1]] * a12) / det;
        delta[idx[1]] = (-e.h[idx[1]] * a11 + e.h[idx[0]] * a21) / det;
      }

      // Damped step: require the active residual norm to shrink.
      const auto active_norm = [&](const DualEval& ev) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          if (active[i]) s += (ev.h[i] / scale[i]) * (ev.h[i] / scale[i]);
        }
        return std::sqrt(s);
      };
      const double base_norm = active_norm(e);
      double damp = 1.0;
      bool stepped = false;
      std::vector<double> mu_new(k);
      for (int ls = 0; ls < 40; ++ls) {
        for (std::size_t i = 0; i < k; ++i) {
          mu_new[i] = std::max(0.0, mu[i] + damp * delta[i]);
        }
        if (active_norm(eval_dual(prob, mu_new)) <=
            (1.0 - 1e-4 * damp) * base_norm) {
          stepped = true;
          break;
        }
        damp *= 0.5;
      }
      if (!stepped) return;  // no further progress representable
      for (std::size_t i = 0; i < k; ++i) {
        mu[i] = mu_new[i];
        if (active[i] && mu[i] == 0.0) {
          // Multiplier pinned at the bound: retry with it inactive.
          active[i] = false;
          changed_set = true;
        }
      }
    }
    if (!changed_set) return;
  }
}

}  // namespace

double qmp_objective(const QmpProblem& prob, const CMatrix& p) {
  const cd lin = (adjoint(prob.b0) * p).trace();
  return quad_form(prob.a0, p) + 2.0 * lin.real() + prob.c0;
}

double constraint_value(const QmpProblem& prob, std::size_t i,
                        const CMatrix& p) {
  const QmpConstraint& con = prob.constraints.at(i);
  double v = quad_form(con.a, p) + con.c;
  if (con.b.norm_fro() != 0.0) {
    v += 2.0 * (adjoint(con.b) * p).trace().real();
  }
  return v;
}

CMatrix inner_minimizer(const QmpProblem& prob, const std::vector<double>& mu) {
  if (mu.size() != prob.constraints.size()) {
    throw std::invalid_argument("inner_minimizer: multiplier count mismatch");
  }
  if (prob.b0.norm_fro() == 0.0) {
    return CMatrix::zeros(prob.b0.rows(), prob.b0.cols());
  }
  return -pinv_solve(combined(prob, mu), prob.b0);
}

double dual_value(const QmpProblem& prob, const std::vector<double>& mu) {
  return eval_dual(prob, mu).g;
}

QmpSolution solve_dual(const QmpProblem& prob, double tol) {
  require_homogeneous(prob);
  const std::size_t k = prob.constraints.size();
  std::vector<double> scale(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (prob.constraints[i].c > 0.0) {
      throw std::runtime_error("solve_dual: infeasible problem, constraint " +
                               std::to_string(i) + " positive at P = 0");
    }
    scale[i] = std::max(1.0, std::abs(prob.constraints[i].c));
  }

  std::vector<double> mu(k, 0.0);
  double step = 1.0;
  const int max_iters = 10000;
  bool converged = false;
  DualEval e = eval_dual(prob, mu);

  for (int iter = 0; iter < max_iters; ++iter) {
    double feas = 0.0, cs = 0.0;
    const double gscale = std::max(1.0, std::abs(e.g));
    for (std::size_t i = 0; i < k; ++i) {
      feas = std::max(feas, e.h[i] / scale[i]);
      cs = std::max(cs, std::abs(mu[i] * e.h[i]) / gscale);
    }
    // The coarse phase only needs to land in the right active-set basin;
    // the Newton polish below takes care of the final digits.
    if (feas <= std::max(tol, 1e-7) && cs <= std::max(tol, 1e-7)) {
      converged = true;
      break;
    }

    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      std::vector<double> trial(k);
      double along = 0.0;
      bool moved = false;
      for (std::size_t i = 0; i < k; ++i) {
        trial[i] = std::max(0.0, mu[i] + step * e.h[i]);
        along += e.h[i] * (trial[i] - mu[i]);
        moved = moved || trial[i] != mu[i];
      }
      if (!moved) break;
      const DualEval et = eval_dual(prob, trial);
      if (et.g >= e.g + 1e-4 * along) {
        mu = std::move(trial);
        e = et;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // floating-point stall; hand over to the polish
  }
  (void)converged;  // final quality is judged on the certified residual

  newton_polish(prob, mu);

  QmpSolution sol;
  sol.mu = mu;
  sol.p = inner_minimizer(prob, mu);
  sol.objective = qmp_objective(prob, sol.p);

  // Certified KKT residual: feasibility, complementary slackness,
  // stationarity of the Lagrangian.
  double res = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double h = constraint_value(prob, i, sol.p);
    res = std::max(res, h / scale[i]);
    res = std::max(res, std::abs(mu[i] * h) / std::max(1.0, std::abs(sol.objective)));
  }
  const CMatrix stat = combined(prob, mu).mat() * sol.p + prob.b0;
  res = std::max(res, stat.norm_fro() / (1.0 + prob.b0.norm_fro()));
  sol.kkt_residual = res;
  if (!(res <= std::max(1e3 * tol, 1e-6))) {
    throw std::runtime_error(
        "solve_dual: could not certify KKT residual within tolerance");
  }
  return sol;
}

SdrLift sdr_lift(const QmpProblem& prob) {
  if (prob.constraints.size() != 2) {
    throw std::invalid_argument("sdr_lift: expected exactly two constraints");
  }
  const int n = prob.b0.cols();
  auto lift_one = [&](const HermitianMatrix& a, const CMatrix& b, double c) {
    const CMatrix blk = kron(CMatrix::identity(n), a.mat());
    const CMatrix vb = vec(b);
    const int d = blk.rows();
    CMatrix omega(d + 1, d + 1);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) omega(i, j) = blk(i, j);
      omega(i, d) = vb(i, 0);
      omega(d, i) = std::conj(vb(i, 0));
    }
    omega(d, d) = cd(c, 0.0);
    return HermitianMatrix(std::move(omega));
  };
  return {lift_one(prob.a0, prob.b0, prob.c0),
          lift_one(prob.constraints[0].a, prob.constraints[0].b,
                   prob.constraints[0].c),
          lift_one(prob.constraints[1].a, prob.constraints[1].b,
                   prob.constraints[1].c)};
}

HermitianMatrix lift_point(const CMatrix& p) {
  const CMatrix v = vec(p);
  const int d = v.rows();
  CMatrix x(d + 1, d + 1);
  for (int i = 0; i <= d; ++i) {
    const cd ui = i < d ? v(i, 0) : cd(1.0, 0.0);
    for (int j = 0; j <= d; ++j) {
      const cd uj = j < d ? v(j, 0) : cd(1.0, 0.0);
      x(i, j) = ui * std::conj(uj);
    }
  }
  return HermitianMatrix(std::move(x));
}

double certify_sdr_gap(const QmpProblem& prob, const QmpSolution& sol) {
  return qmp_objective(prob, sol.p) - dual_value(prob, sol.mu);
}

}  // namespace afrelay::qmp
