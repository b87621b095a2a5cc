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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace afrelay {

using cd = std::complex<double>;

/// Dense complex matrix, row-major storage. Value type: copies are deep,
/// instances are immutable-by-convention once built and safe to share
/// across threads.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);  // zero-filled
  CMatrix(int rows, int cols, std::vector<cd> entries);
  CMatrix(std::initializer_list<std::initializer_list<cd>> rows);

  static CMatrix zeros(int rows, int cols);
  static CMatrix identity(int n);
  // Rectangular "identity-shaped": ones on the main diagonal.
  static CMatrix identity(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }

  cd& operator()(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const cd& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  cd* data() { return entries_.data(); }
  const cd* data() const { return entries_.data(); }

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cd scalar);

  cd trace() const;
  double norm_fro() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cd> entries_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(const CMatrix& m);
CMatrix operator*(const CMatrix& a, const CMatrix& b);  // kernel-dispatched
CMatrix operator*(cd scalar, CMatrix m);
CMatrix operator*(CMatrix m, cd scalar);
CMatrix operator*(double scalar, CMatrix m);
CMatrix operator*(CMatrix m, double scalar);

CMatrix adjoint(const CMatrix& m);    // conjugate transpose
CMatrix transpose(const CMatrix& m);
CMatrix conj(const CMatrix& m);

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Column-stacking: column j of m occupies rows j*m.rows() .. +m.rows()-1.
CMatrix vec(const CMatrix& m);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Trace of a numerically-real matrix product. Throws if the imaginary
/// residue exceeds 1e-10 relative; a larger residue indicates a bug, not
/// roundoff.
double real_trace(const CMatrix& m);

/// Square matrix validated (and then exactly symmetrized) against
/// max |a_ij - conj(a_ji)| <= 1e-10 * (1 + max |a_ij|).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m);

  static HermitianMatrix zero(int n);
  static HermitianMatrix identity(int n);
  static HermitianMatrix scaled_identity(int n, double s);

  const CMatrix& mat() const { return mat_; }
  operator const CMatrix&() const { return mat_; }
  int dim() const { return mat_.rows(); }
  const cd& operator()(int i, int j) const { return mat_(i, j); }

 private:
  CMatrix mat_;
};

}  // namespace afrelay
