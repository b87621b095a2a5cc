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
#include <string>
#include <string_view>

#include "afrelay/cmatrix.hpp"
#include "afrelay/rng.hpp"

namespace afrelay {

/// Row/column covariance pair of a channel-estimation error. sigma is the
/// receive-side (row) covariance, psi the transmit-side factor; the error
/// matrix is drawn as sigma^{1/2} * W * psi^{1/2} with W i.i.d. CN(0,1).
struct ErrorStats {
  HermitianMatrix sigma;
  HermitianMatrix psi;
};

/// Two-hop model: estimated channels, error statistics and noise
/// covariances. Dimensions: hbar_sr is M_R x N_S, hbar_rd is M_D x N_R.
struct ChannelModel {
  CMatrix hbar_sr;
  CMatrix hbar_rd;
  ErrorStats stats_sr;
  ErrorStats stats_rd;
  HermitianMatrix rn1;
  HermitianMatrix rn2;
  int n_streams = 0;

  int ns() const { return hbar_sr.cols(); }
  int mr() const { return hbar_sr.rows(); }
  int nr() const { return hbar_rd.cols(); }
  int md() const { return hbar_rd.rows(); }
};

struct CorrelationParams {
  double alpha = 0.0;    // transmit correlation, [0,1)
  double beta = 0.0;     // receive correlation, [0,1)
  double sigma_e2 = 0.0; // estimation-error variance, >= 0
};

/// Exponential correlation matrix: entry (i,j) = rho^|i-j|.
HermitianMatrix exp_correlation(int n, double rho);

/// Error statistics from the estimator model: psi = r_t,
/// sigma = sigma_e2 * (I + sigma_e2 * r_r^{-1})^{-1}.
ErrorStats error_stats(double sigma_e2, const HermitianMatrix& r_t,
                       const HermitianMatrix& r_r);

/// One draw of the matrix-variate error sigma^{1/2} * W * psi^{1/2}.
CMatrix sample_error(const ErrorStats& stats, Rng& rng);

/// Precomputed square-root factors for repeated error draws.
class ErrorSampler {
 public:
  explicit ErrorSampler(const ErrorStats& stats);
  CMatrix sample(Rng& rng) const;
  int rows() const { return sqrt_sigma_.rows(); }
  int cols() const { return sqrt_psi_.cols(); }

 private:
  CMatrix sqrt_sigma_;
  CMatrix sqrt_psi_;
};

/// hbar plus one sampled estimation error.
CMatrix true_channel(const CMatrix& hbar, const ErrorStats& stats, Rng& rng);

/// White noise covariance sigma^2 * I with total_power / Tr(result) equal
/// to the linear SNR given in dB.
HermitianMatrix noise_from_snr(double total_power, double snr_db, int dim);

/// Model assembly with invariant checks (noise PD, stream count feasible,
/// covariance dimensions matching the channels).
ChannelModel make_model(CMatrix hbar_sr, CMatrix hbar_rd,
                        ErrorStats stats_sr, ErrorStats stats_rd,
                        HermitianMatrix rn1, HermitianMatrix rn2,
                        int n_streams);

/// Convenience builder used by the CLI and the simulator: exponential
/// correlation on both hops (alpha transmit, beta receive), white noise
/// from the two SNR definitions snr_sr = ps/Tr(rn1), snr_rd = pr/Tr(rn2).
ChannelModel build_model(const CMatrix& hbar_sr, const CMatrix& hbar_rd,
                         const CorrelationParams& corr, double snr_sr_db,
                         double snr_rd_db, double ps, double pr,
                         int n_streams);

/// Same model with both error statistics zeroed (estimated-channel-only
/// design input).
ChannelModel with_zero_errors(const ChannelModel& model);

struct ChannelPreset {
  CMatrix hbar_sr;
  CMatrix hbar_rd;
};

/// Built-in presets; "paper-4x4" is the embedded 4x4 pair.
ChannelPreset channel_preset(std::string_view name);

// Plain-text matrix format: one complex entry per token as a+bi, rows
// separated by newlines. '#' starts a comment.
CMatrix read_matrix(std::istream& in);
CMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const CMatrix& m);
std::string format_complex(cd z);

}  // namespace afrelay
