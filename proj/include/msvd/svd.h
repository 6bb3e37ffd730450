/* Copyright 2026 The MSVD Denoise Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef MSVD_SVD_H_
#define MSVD_SVD_H_

#include <vector>

#include "msvd/matrix.h"

namespace msvd {

// Full singular value decomposition a = u * diag(s) * v^T of an M x N matrix.
//   u: M x M orthonormal
//   s: min(M, N) non-negative values, non-increasing
//   v: N x N orthonormal
// Each column of u has its largest-magnitude entry positive (lowest index wins
// ties) and the matching column of v is flipped with it.
struct SvdFactors {
  Matrix u;
  std::vector<double> s;
  Matrix v;
};

// One-sided (Hestenes) Jacobi SVD. Wide inputs are factored through their
// transpose. Singular values below max(M, N) * eps * ||a||_F are reported as
// exact zeros and their left vectors come from Gram-Schmidt completion, so u
// is always a full orthonormal basis. Deterministic for identical input.
// Throws ConvergenceError if 30 sweeps do not bring every column pair's
// normalized inner product under 1e-12.
SvdFactors svd(const Matrix& a);

// u * diag(s) * v^T.
Matrix compose(const SvdFactors& f);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]
};

// Cyclic Jacobi eigensolver for a symmetric matrix. The eigenvector matrix is
// orthonormal by construction, including inside degenerate eigenspaces.
SymmetricEigen symmetric_eigen(const Matrix& sym);

// Left singular vectors of a 4 x m matrix (m >= 4), obtained from the 4 x 4
// Gram matrix a1 * a1^T instead of factoring a1 itself. Columns follow
// descending singular value and the same sign rule as svd().
Matrix left_singular_basis_4(const Matrix& a1);

}  // namespace msvd

#endif  // MSVD_SVD_H_
