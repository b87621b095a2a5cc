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

#include <vector>

#include "afrelay/cmatrix.hpp"

// Convex quadratic matrix programs
//
//   min_P  Tr(P^H A0 P) + 2 Re Tr(B0^H P) + c0
//   s.t.   Tr(P^H Ai P) + 2 Re Tr(Bi^H P) + ci <= 0
//
// with Hermitian PSD Ai. The precoder subproblem lands here with exactly
// two constraints, both with Bi = 0; the solver exploits that: the
// Lagrangian inner minimizer is closed-form, so the dual is a concave
// function of the two multipliers and is maximized by projected gradient
// ascent. The semidefinite lift of the same program is kept as a
// verification structure, not as a solution path.

namespace afrelay::qmp {

struct QmpConstraint {
  HermitianMatrix a;
  CMatrix b;
  double c = 0.0;
};

struct QmpProblem {
  HermitianMatrix a0;
  CMatrix b0;
  double c0 = 0.0;
  std::vector<QmpConstraint> constraints;
};

struct QmpSolution {
  CMatrix p;
  std::vector<double> mu;
  double kkt_residual = 0.0;
  double objective = 0.0;
};

double qmp_objective(const QmpProblem& prob, const CMatrix& p);

/// Value of constraint i at p (feasible iff <= 0).
double constraint_value(const QmpProblem& prob, std::size_t i,
                        const CMatrix& p);

/// Lagrangian dual value g(mu) = min_P L(P, mu), evaluated through the
/// closed-form inner minimizer. Requires all Bi = 0.
double dual_value(const QmpProblem& prob, const std::vector<double>& mu);

/// Inner minimizer P(mu) = -(A0 + sum mu_i Ai)^{-1} B0. Singular
/// Lagrangian Hessians resolve to the minimum-norm solution (eigenvalues
/// below 1e-12 of the largest are truncated).
CMatrix inner_minimizer(const QmpProblem& prob, const std::vector<double>& mu);

/// Projected-gradient dual ascent from mu = 0 with Armijo backtracking.
/// Stops when primal feasibility and complementary slackness are both
/// within tol (relative); throws on infeasible problems and on hitting
/// the iteration cap.
QmpSolution solve_dual(const QmpProblem& prob, double tol = 1e-10);

struct SdrLift {
  HermitianMatrix omega0;
  HermitianMatrix omega1;
  HermitianMatrix omega2;
};

/// Lift blocks Omega_i = [[I_N (x) A_i, vec(B_i)], [vec^H(B_i), c_i]] of
/// the equivalent semidefinite program (two-constraint problems).
SdrLift sdr_lift(const QmpProblem& prob);

/// Rank-one lift [vec(P); 1] [vec(P); 1]^H.
HermitianMatrix lift_point(const CMatrix& p);

/// Duality-gap estimate objective(sol.p) - g(sol.mu); a value within
/// tolerance certifies global optimality of sol.p and hence a zero
/// relaxation gap at this instance.
double certify_sdr_gap(const QmpProblem& prob, const QmpSolution& sol);

}  // namespace afrelay::qmp
