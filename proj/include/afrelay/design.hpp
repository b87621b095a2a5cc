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

#include <iosfwd>
#include <vector>

#include "afrelay/channel.hpp"
#include "afrelay/objective.hpp"
#include "afrelay/qmp.hpp"

// The alternating three-step optimizer: closed-form equalizer update,
// relay matrix via the KKT system with a bisection on the power
// multiplier, and precoder via the QMP dual solver. Each step is the
// exact minimizer of the MSE over its own block, so the MSE trace is
// non-increasing; a violation beyond roundoff slack is treated as a bug
// and raised, not smoothed over.

namespace afrelay::design {

struct DesignConfig {
  double tol_mse = 1e-6;      // absolute stop on |MSE_i - MSE_{i-1}|
  int max_iters = 100;
  double tol_power = 1e-8;    // relative residual allowed on power equations
  double tol_lambda = 1e-14;  // relative bracket collapse for the bisection
};

struct IterRecord {
  int iteration = 0;
  double mse = 0.0;
  double lambda = 0.0;   // F-step multiplier
  double mu1 = 0.0;      // P-step multipliers
  double mu2 = 0.0;
  double slack_ps = 0.0; // budget minus used power, source
  double slack_pr = 0.0; // budget minus used power, relay
};
using IterTrace = std::vector<IterRecord>;

struct DesignResult {
  Transceiver t;
  IterTrace trace;
  bool converged = false;
  double final_mse = 0.0;
};

/// Optimal equalizer for fixed (f, p):
/// g = (hbar_rd f hbar_sr p)^H (hbar_rd f rx f^H hbar_rd^H + k)^{-1}.
CMatrix g_step(const CMatrix& f, const CMatrix& p, const ChannelModel& model);

/// Stationary relay matrix for a given multiplier:
/// f(lambda) = (hbar_rd^H g^H g hbar_rd + psi_rd Tr(g sigma_rd g^H)
///              + lambda I)^{-1} hbar_rd^H g^H p^H hbar_sr^H rx^{-1}.
/// Throws if the regularized matrix is singular (possible only at
/// lambda = 0).
CMatrix f_of_lambda(double lambda, const CMatrix& g, const CMatrix& p,
                    const ChannelModel& model);

/// Upper end of the multiplier search bracket,
/// sqrt(Tr(hbar_rd^H g^H p^H hbar_sr^H rx^{-1} hbar_sr p g hbar_rd) / pr).
double lambda_upper_bound(const CMatrix& g, const CMatrix& p,
                          const ChannelModel& model, double pr);

struct FStep {
  CMatrix f;
  double lambda = 0.0;
};

/// Relay-matrix subproblem: lambda = 0 when unconstrained power already
/// fits the budget, otherwise bisection for Tr(f rx f^H) = pr on
/// [0, lambda_upper_bound] (bracket doubled if the bound ever fails to
/// enclose the root).
FStep f_step(const CMatrix& g, const CMatrix& p, const ChannelModel& model,
             double pr, double tol);

/// Precoder subproblem in QMP form (two constraints, zero linear terms).
qmp::QmpProblem qmp_params(const CMatrix& f, const CMatrix& g,
                           const ChannelModel& model,
                           const PowerBudget& budget);

/// Precoder update: solves the QMP via the dual method. Throws when the
/// problem is infeasible (relay noise power alone exceeds the budget).
qmp::QmpSolution p_step(const CMatrix& f, const CMatrix& g,
                        const ChannelModel& model, const PowerBudget& budget,
                        double tol);

/// Full alternating loop from identity-shaped starts scaled to meet both
/// power constraints with equality.
DesignResult alternate(const ChannelModel& model, const PowerBudget& budget,
                       const DesignConfig& config);

/// CSV: iteration,mse,lambda,mu1,mu2,slack_ps,slack_pr
void write_trace_csv(std::ostream& out, const IterTrace& trace);

}  // namespace afrelay::design
