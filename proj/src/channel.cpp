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

#include "afrelay/channel.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "afrelay/linalg.hpp"

namespace afrelay {

HermitianMatrix exp_correlation(int n, double rho) {
  if (n < 1) throw std::invalid_argument("exp_correlation: n must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("exp_correlation: rho must be in [0,1)");
  }
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = cd(std::pow(rho, std::abs(i - j)), 0.0);
    }
  }
  return HermitianMatrix(std::move(m));
}

ErrorStats error_stats(double sigma_e2, const HermitianMatrix& r_t,
                       const HermitianMatrix& r_r) {
  if (sigma_e2 < 0.0) {
    throw std::invalid_argument("error_stats: sigma_e2 must be >= 0");
  }
  const CMatrix inv_rr = linalg::inv_hpd(r_r);  // throws if singular
  CMatrix s = CMatrix::identity(r_r.dim()) + sigma_e2 * inv_rr;
  const CMatrix sigma = sigma_e2 * linalg::inv_hpd(HermitianMatrix(std::move(s)));
  return {HermitianMatrix(sigma), r_t};
}

ErrorSampler::ErrorSampler(const ErrorStats& stats)
    : sqrt_sigma_(linalg::hermitian_sqrt(stats.sigma)),
      sqrt_psi_(linalg::hermitian_sqrt(stats.psi)) {}

CMatrix ErrorSampler::sample(Rng& rng) const {
  const CMatrix w = sample_cgaussian(sqrt_sigma_.cols(), sqrt_psi_.rows(), rng);
  return sqrt_sigma_ * w * sqrt_psi_;
}

CMatrix sample_error(const ErrorStats& stats, Rng& rng) {
  return ErrorSampler(stats).sample(rng);
}

CMatrix true_channel(const CMatrix& hbar, const ErrorStats& stats, Rng& rng) {
  if (stats.sigma.dim() != hbar.rows() || stats.psi.dim() != hbar.cols()) {
    throw std::invalid_argument("true_channel: covariance dimensions mismatch");
  }
  return hbar + sample_error(stats, rng);
}

HermitianMatrix noise_from_snr(double total_power, double snr_db, int dim) {
  if (!(total_power > 0.0)) {
    throw std::invalid_argument("noise_from_snr: total_power must be > 0");
  }
  if (dim < 1) throw std::invalid_argument("noise_from_snr: dim must be >= 1");
  const double snr_lin = std::pow(10.0, snr_db / 10.0);
  return HermitianMatrix::scaled_identity(dim, total_power / (snr_lin * dim));
}

ChannelModel make_model(CMatrix hbar_sr, CMatrix hbar_rd, ErrorStats stats_sr,
                        ErrorStats stats_rd, HermitianMatrix rn1,
                        HermitianMatrix rn2, int n_streams) {
  ChannelModel m{std::move(hbar_sr), std::move(hbar_rd), std::move(stats_sr),
                 std::move(stats_rd), std::move(rn1), std::move(rn2),
                 n_streams};
  if (m.stats_sr.sigma.dim() != m.mr() || m.stats_sr.psi.dim() != m.ns() ||
      m.stats_rd.sigma.dim() != m.md() || m.stats_rd.psi.dim() != m.nr()) {
    throw std::invalid_argument("make_model: error-stats dimensions mismatch");
  }
  if (m.rn1.dim() != m.mr() || m.rn2.dim() != m.md()) {
    throw std::invalid_argument("make_model: noise dimensions mismatch");
  }
  CMatrix l;
  if (!linalg::try_chol(m.rn1, l) || !linalg::try_chol(m.rn2, l)) {
    throw std::invalid_argument("make_model: noise covariance not positive definite");
  }
  const int cap = std::min(std::min(m.ns(), m.mr()), std::min(m.nr(), m.md()));
  if (n_streams < 1 || n_streams > cap) {
    throw std::invalid_argument("make_model: stream count exceeds antenna dimensions");
  }
  return m;
}

ChannelModel build_model(const CMatrix& hbar_sr, const CMatrix& hbar_rd,
                         const CorrelationParams& corr, double snr_sr_db,
                         double snr_rd_db, double ps, double pr,
                         int n_streams) {
  ErrorStats sr = error_stats(corr.sigma_e2, exp_correlation(hbar_sr.cols(), corr.alpha),
                              exp_correlation(hbar_sr.rows(), corr.beta));
  ErrorStats rd = error_stats(corr.sigma_e2, exp_correlation(hbar_rd.cols(), corr.alpha),
                              exp_correlation(hbar_rd.rows(), corr.beta));
  return make_model(hbar_sr, hbar_rd, std::move(sr), std::move(rd),
                    noise_from_snr(ps, snr_sr_db, hbar_sr.rows()),
                    noise_from_snr(pr, snr_rd_db, hbar_rd.rows()), n_streams);
}

ChannelModel with_zero_errors(const ChannelModel& model) {
  ChannelModel m = model;
  m.stats_sr = {HermitianMatrix::zero(model.mr()), HermitianMatrix::zero(model.ns())};
  m.stats_rd = {HermitianMatrix::zero(model.md()), HermitianMatrix::zero(model.nr())};
  return m;
}

ChannelPreset channel_preset(std::string_view name) {
  if (name == "paper-4x4") {
    CMatrix hsr{{cd(1.02, 0.82), cd(-0.01, -0.61), cd(0.12, -0.26), cd(0.02, 0.64)},
                {cd(0.08, 0.90), cd(0.70, -1.22), cd(0.06, 0.19), cd(0.46, 0.62)},
                {cd(1.43, -1.23), cd(0.71, -0.70), cd(-0.23, 0.81), cd(0.03, 0.25)},
                {cd(0.43, -0.71), cd(1.56, -0.23), cd(0.29, 1.30), cd(-0.63, 0.73)}};
    CMatrix hrd{{cd(1.01, -1.22), cd(0.36, -0.29), cd(0.08, 0.50), cd(-0.01, 0.37)},
                {cd(0.89, -1.23), cd(1.05, -0.06), cd(0.32, -0.21), cd(0.45, 0.73)},
                {cd(-0.50, 0.23), cd(-0.45, -0.14), cd(-0.55, 0.42), cd(1.01, 0.23)},
                {cd(-1.00, 0.38), cd(-0.54, 0.31), cd(-0.00, 0.62), cd(0.82, 1.32)}};
    return {std::move(hsr), std::move(hrd)};
  }
  throw std::invalid_argument("unknown channel preset: " + std::string(name));
}

namespace {

cd parse_complex_token(const std::string& tok) {
  // Accepted forms: a, a+bi, a-bi (decimal or scientific notation).
  if (tok.empty()) throw std::invalid_argument("empty matrix token");
  if (tok.back() != 'i' && tok.back() != 'I') {
    std::size_t pos = 0;
    const double re = std::stod(tok, &pos);
    if (pos != tok.size()) {
      throw std::invalid_argument("bad matrix token: " + tok);
    }
    return cd(re, 0.0);
  }
  const std::string body = tok.substr(0, tok.size() - 1);
  // Split at the last +/- that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    const char ch = body[i];
    if ((ch == '+' || ch == '-') &&
        body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    throw std::invalid_argument("bad matrix token: " + tok);
  }
  std::size_t pos = 0;
  const double re = std::stod(body.substr(0, split), &pos);
  if (pos != split) throw std::invalid_argument("bad matrix token: " + tok);
  std::string imag_part = body.substr(split);
  if (imag_part == "+" || imag_part == "-") imag_part += "1";
  const double im = std::stod(imag_part, &pos);
  if (pos != imag_part.size()) {
    throw std::invalid_argument("bad matrix token: " + tok);
  }
  return cd(re, im);
}

}  // namespace

CMatrix read_matrix(std::istream& in) {
  std::vector<std::vector<cd>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<cd> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_complex_token(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_matrix: no data");
  const std::size_t cols = rows.front().size();
  std::vector<cd> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw std::invalid_argument("read_matrix: ragged rows");
    }
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return CMatrix(static_cast<int>(rows.size()), static_cast<int>(cols),
                 std::move(entries));
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  return read_matrix(in);
}

std::string format_complex(cd z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

void write_matrix(std::ostream& out, const CMatrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_complex(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace afrelay
