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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "afrelay/channel.hpp"
#include "afrelay/objective.hpp"

// Self-check suite behind the `validate` CLI command: Monte-Carlo oracles
// for the averaged-MSE algebra, stationarity and KKT residual checks for
// the three subproblem solvers, lift consistency for the QMP, and a
// convergence run. Each check reports a measured worst-case statistic
// against its threshold.

namespace afrelay::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidateOptions {
  std::uint64_t seed = 20260809;
  std::size_t pi_p_samples = 100000;
  std::size_t mse_trials = 20000;
  int mse_transceivers = 5;
  int gradient_checks = 5;
  int f_step_instances = 20;
  int p_step_instances = 5;
  int feasible_samples = 1000;
  int lift_checks = 50;
};

using PiPFn = std::function<HermitianMatrix(
    const CMatrix&, const ErrorStats&, const CMatrix&)>;

/// Monte-Carlo check of the error-averaged transmit covariance against
/// pi_fn (the production pi_p by default; tests inject corrupted variants
/// to confirm the check bites).
CheckResult check_pi_p_oracle(const ChannelModel& model, const CMatrix& p,
                              std::size_t samples, Rng& rng,
                              const PiPFn& pi_fn = nullptr);

CheckResult check_mse_consistency(const ChannelModel& model, int transceivers,
                                  std::size_t trials, Rng& rng);
CheckResult check_g_step_gradient(const ChannelModel& model, int instances,
                                  Rng& rng);
CheckResult check_f_step_kkt(const ChannelModel& model, double pr,
                             int instances, Rng& rng);
CheckResult check_f_lambda_monotone(const ChannelModel& model, double pr,
                                    int instances, Rng& rng);
CheckResult check_p_step_optimality(const ChannelModel& model,
                                    const PowerBudget& budget, int instances,
                                    int feasible_samples, Rng& rng);
CheckResult check_sdr_lift(const ChannelModel& model,
                           const PowerBudget& budget, int lift_checks,
                           Rng& rng);
CheckResult check_alternate_convergence(const PowerBudget& budget);

/// Full suite on the embedded 4x4 channels (alpha 0.5, beta 0.4).
std::vector<CheckResult> run_validation(const ValidateOptions& opts);

/// Random matrices for check instances (entries CN(0,1) scaled).
CMatrix random_matrix(int rows, int cols, Rng& rng, double scale = 1.0);

}  // namespace afrelay::validate
