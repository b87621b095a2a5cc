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

#include "afrelay/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace afrelay::linalg {

namespace {

double offdiag_norm2(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

}  // namespace

Eigh eigh(const HermitianMatrix& input) {
  const int n = input.dim();
  CMatrix a = input.mat();
  CMatrix v = CMatrix::identity(n);
  if (n == 0) return {std::vector<double>{}, v};

  const double scale = a.norm_fro();
  const double stop = (scale > 0.0 ? 1e-14 * scale : 0.0);
  const int max_sweeps = 64;

  int sweep = 0;
  while (std::sqrt(offdiag_norm2(a)) > stop) {
    if (++sweep > max_sweeps) {
      throw std::runtime_error("eigh: Jacobi sweeps did not converge");
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cd apq = a(p, q);
        const double beta = std::abs(apq);
        if (beta <= stop / (n * n + 1.0)) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cd phase = apq / beta;  // e^{i phi}

        // tan(2 theta) = 2 beta / (aqq - app), smaller-angle root.
        const double tau = (aqq - app) / (2.0 * beta);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns p,q of A and V:  col_p' = c*col_p - s*conj(phase)*col_q,
        // col_q' = s*phase*col_p + c*col_q.
        const cd sp = s * phase;
        const cd spc = s * std::conj(phase);
        for (int k = 0; k < n; ++k) {
          const cd akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - spc * akq;
          a(k, q) = sp * akp + c * akq;
          const cd vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - spc * vkq;
          v(k, q) = sp * vkp + c * vkq;
        }
        // Rows p,q of A (conjugated coefficients).
        for (int k = 0; k < n; ++k) {
          const cd apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = spc * apk + c * aqk;
        }
        // The rotation annihilates the (p,q) pair analytically.
        a(p, q) = cd(0.0, 0.0);
        a(q, p) = cd(0.0, 0.0);
        a(p, p) = cd(a(p, p).real(), 0.0);
        a(q, q) = cd(a(q, q).real(), 0.0);
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  Eigh out;
  out.w.resize(n);
  out.v = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.w[j] = a(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.v(i, j) = v(i, order[j]);
  }
  return out;
}

double min_eigenvalue(const HermitianMatrix& a) {
  const Eigh e = eigh(a);
  return e.w.empty() ? 0.0 : e.w.front();
}

bool try_chol(const HermitianMatrix& input, CMatrix& l) {
  const int n = input.dim();
  const CMatrix& a = input.mat();
  l = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      cd s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

CMatrix chol(const HermitianMatrix& a) {
  CMatrix l;
  if (!try_chol(a, l)) {
    throw std::runtime_error("chol: matrix not positive definite");
  }
  return l;
}

CMatrix chol_solve(const CMatrix& l, const CMatrix& b) {
  const int n = l.rows();
  if (b.rows() != n) throw std::invalid_argument("chol_solve: shape mismatch");
  CMatrix x = b;
  // forward: L y = b
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < n; ++i) {
      cd s = x(i, j);
      for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
      x(i, j) = s / l(i, i);
    }
    // backward: L^H x = y
    for (int i = n - 1; i >= 0; --i) {
      cd s = x(i, j);
      for (int k = i + 1; k < n; ++k) s -= std::conj(l(k, i)) * x(k, j);
      x(i, j) = s / l(i, i);
    }
  }
  return x;
}

CMatrix solve_hpd(const HermitianMatrix& a, const CMatrix& b) {
  return chol_solve(chol(a), b);
}

CMatrix inv_hpd(const HermitianMatrix& a) {
  return solve_hpd(a, CMatrix::identity(a.dim()));
}

CMatrix hermitian_sqrt(const HermitianMatrix& a) {
  const Eigh e = eigh(a);
  const double scale = a.mat().norm_fro();
  const double floor = -1e-10 * (scale > 0.0 ? scale : 1.0);
  const int n = a.dim();
  CMatrix scaled(n, n);
  for (int j = 0; j < n; ++j) {
    double w = e.w[j];
    if (w < floor) {
      throw std::runtime_error("hermitian_sqrt: input not positive semidefinite");
    }
    if (w < 0.0) w = 0.0;
    const double r = std::sqrt(w);
    for (int i = 0; i < n; ++i) scaled(i, j) = e.v(i, j) * r;
  }
  return scaled * adjoint(e.v);
}

}  // namespace afrelay::linalg
