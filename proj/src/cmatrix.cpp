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

#include "afrelay/cmatrix.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "afrelay/kernels.hpp"

namespace afrelay {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

CMatrix::CMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * cols, cd(0.0, 0.0)) {
  require(rows >= 0 && cols >= 0, "CMatrix: negative dimension");
}

CMatrix::CMatrix(int rows, int cols, std::vector<cd> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require(rows >= 0 && cols >= 0, "CMatrix: negative dimension");
  require(entries_.size() == static_cast<std::size_t>(rows) * cols,
          "CMatrix: entry count does not match rows*cols");
  if (!all_finite()) throw std::invalid_argument("CMatrix: non-finite entry");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cd>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  entries_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    require(static_cast<int>(r.size()) == cols_, "CMatrix: ragged rows");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::zeros(int rows, int cols) { return CMatrix(rows, cols); }

CMatrix CMatrix::identity(int n) { return identity(n, n); }

CMatrix CMatrix::identity(int rows, int cols) {
  CMatrix m(rows, cols);
  const int d = rows < cols ? rows : cols;
  for (int i = 0; i < d; ++i) m(i, i) = cd(1.0, 0.0);
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "operator+=: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "operator-=: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cd scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

cd CMatrix::trace() const {
  require(rows_ == cols_, "trace: matrix not square");
  cd t(0.0, 0.0);
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::norm_fro() const {
  return std::sqrt(kernels::sum_abs2(entries_.data(), entries_.size()));
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) {
    const double a = std::abs(e);
    if (a > m) m = a;
  }
  return m;
}

bool CMatrix::all_finite() const {
  for (const auto& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  }
  return true;
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }

CMatrix operator-(const CMatrix& m) {
  CMatrix out = m;
  return out *= cd(-1.0, 0.0);
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("operator*: inner dimensions mismatch");
  }
  CMatrix c(a.rows(), b.cols());
  kernels::cgemm(c.data(), a.data(), b.data(),
                 static_cast<std::size_t>(a.rows()),
                 static_cast<std::size_t>(a.cols()),
                 static_cast<std::size_t>(b.cols()));
  return c;
}

CMatrix operator*(cd scalar, CMatrix m) { return m *= scalar; }
CMatrix operator*(CMatrix m, cd scalar) { return m *= scalar; }
CMatrix operator*(double scalar, CMatrix m) { return m *= cd(scalar, 0.0); }
CMatrix operator*(CMatrix m, double scalar) { return m *= cd(scalar, 0.0); }

CMatrix adjoint(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

CMatrix transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

CMatrix conj(const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = std::conj(m(i, j));
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const cd aij = a(i, j);
      if (aij == cd(0.0, 0.0)) continue;
      for (int p = 0; p < b.rows(); ++p) {
        for (int q = 0; q < b.cols(); ++q) {
          out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
      }
    }
  }
  return out;
}

CMatrix vec(const CMatrix& m) {
  CMatrix out(m.rows() * m.cols(), 1);
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < m.rows(); ++i) out(j * m.rows() + i, 0) = m(i, j);
  }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const double d = std::abs(a(i, j) - b(i, j));
      if (d > m) m = d;
    }
  }
  return m;
}

double real_trace(const CMatrix& m) {
  const cd t = m.trace();
  if (std::abs(t.imag()) > 1e-10 * (1.0 + std::abs(t.real()))) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "real_trace: unexpected imaginary residue (%.6g%+.6gi)",
                  t.real(), t.imag());
    throw std::runtime_error(buf);
  }
  return t.real();
}

HermitianMatrix::HermitianMatrix(CMatrix m) : mat_(std::move(m)) {
  require(mat_.rows() == mat_.cols(), "HermitianMatrix: matrix not square");
  double asym = 0.0;
  for (int i = 0; i < mat_.rows(); ++i) {
    for (int j = i; j < mat_.cols(); ++j) {
      const double d = std::abs(mat_(i, j) - std::conj(mat_(j, i)));
      if (d > asym) asym = d;
    }
  }
  if (asym > 1e-10 * (1.0 + mat_.max_abs())) {
    throw std::invalid_argument("HermitianMatrix: input not Hermitian");
  }
  // Symmetrize exactly so downstream factorizations see a Hermitian matrix.
  for (int i = 0; i < mat_.rows(); ++i) {
    mat_(i, i) = cd(mat_(i, i).real(), 0.0);
    for (int j = i + 1; j < mat_.cols(); ++j) {
      const cd avg = 0.5 * (mat_(i, j) + std::conj(mat_(j, i)));
      mat_(i, j) = avg;
      mat_(j, i) = std::conj(avg);
    }
  }
}

HermitianMatrix HermitianMatrix::zero(int n) {
  return HermitianMatrix(CMatrix::zeros(n, n));
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(CMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::scaled_identity(int n, double s) {
  return HermitianMatrix(CMatrix::identity(n) * s);
}

}  // namespace afrelay
