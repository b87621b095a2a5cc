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

#include <cstddef>

#include "afrelay/channel.hpp"
#include "afrelay/cmatrix.hpp"
#include "afrelay/rng.hpp"

namespace afrelay {

/// Design triple: source precoder (N_S x N), relay forward matrix
/// (N_R x M_R), destination equalizer (N x M_D).
struct Transceiver {
  CMatrix p;
  CMatrix f;
  CMatrix g;
};

struct PowerBudget {
  double ps = 0.0;
  double pr = 0.0;
};

/// Error-averaged transmit covariance:
/// Tr(p p^H psi_sr) sigma_sr + hbar_sr p p^H hbar_sr^H.
HermitianMatrix pi_p(const CMatrix& p, const ErrorStats& stats_sr,
                     const CMatrix& hbar_sr);

/// Relay receive autocorrelation pi_p + rn1 (positive definite).
HermitianMatrix r_x(const CMatrix& p, const ErrorStats& stats_sr,
                    const CMatrix& hbar_sr, const HermitianMatrix& rn1);

/// Tr(f rx f^H psi_rd) sigma_rd + rn2.
HermitianMatrix k_matrix(const CMatrix& f, const HermitianMatrix& rx,
                         const ErrorStats& stats_rd,
                         const HermitianMatrix& rn2);

/// Closed-form MSE averaged over data, noise and estimation errors.
double mse(const Transceiver& t, const ChannelModel& model);

struct MonteCarloMse {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Direct Monte-Carlo estimate of the same expectation: per trial draws
/// both channel errors, a CN(0,I) data vector and both noises, and
/// averages the squared equalized error. Verification oracle for the
/// closed form; deterministic for a fixed stream.
MonteCarloMse mse_monte_carlo(const Transceiver& t, const ChannelModel& model,
                              std::size_t trials, Rng& rng);

/// Tr(f rx f^H), the relay transmit power.
double relay_tx_power(const CMatrix& f, const HermitianMatrix& rx);

}  // namespace afrelay
