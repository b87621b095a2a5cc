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

namespace afrelay::linalg {

/// Eigendecomposition of a Hermitian matrix: a = v * diag(w) * v^H,
/// eigenvalues ascending, v unitary.
struct Eigh {
  std::vector<double> w;
  CMatrix v;
};

/// Cyclic complex Jacobi. Plenty for the small dense matrices used here
/// (up to a few tens of rows).
Eigh eigh(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);

/// Lower Cholesky factor of a positive definite matrix; throws
/// std::runtime_error if a pivot fails.
CMatrix chol(const HermitianMatrix& a);
bool try_chol(const HermitianMatrix& a, CMatrix& l);

/// Solve (l * l^H) x = b given the Cholesky factor l.
CMatrix chol_solve(const CMatrix& l, const CMatrix& b);

/// Solve a x = b for Hermitian positive definite a.
CMatrix solve_hpd(const HermitianMatrix& a, const CMatrix& b);
CMatrix inv_hpd(const HermitianMatrix& a);

/// Hermitian PSD square root s with s * s^H = a. Eigenvalues in
/// [-1e-10 * ||a||_F, 0) are clamped to zero; anything below that
/// threshold throws (input not PSD).
CMatrix hermitian_sqrt(const HermitianMatrix& a);

}  // namespace afrelay::linalg
