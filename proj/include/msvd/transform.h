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

#ifndef MSVD_TRANSFORM_H_
#define MSVD_TRANSFORM_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "msvd/matrix.h"

namespace msvd {

// The four half-resolution bands of one MSVD level. Band labels follow the
// row index of the transformed block matrix (ll = strongest singular
// direction, hh = weakest); they carry no fixed geometric orientation.
struct SubBands {
  Matrix ll;
  Matrix lh;
  Matrix hl;
  Matrix hh;
};

struct PyramidLevel {
  Matrix lh;
  Matrix hl;
  Matrix hh;
  Matrix u;  // 4x4 orthonormal transform for this level
};

// Multi-level MSVD decomposition. levels[0] is the finest level; top_ll is
// the approximation band left after the deepest level.
struct MsvdPyramid {
  std::vector<PyramidLevel> levels;
  Matrix top_ll;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// One analysis step: gather 2x2 blocks into a 4 x m matrix, rotate it onto
// its left singular basis u, and unpack the four rows as bands.
std::pair<SubBands, Matrix> analyze_level(const Matrix& img);

// Inverse of analyze_level. Throws ValidationError if u is not orthonormal to
// within 1e-10 or the band shapes disagree with the output size.
Matrix synthesize_level(const SubBands& bands, const Matrix& u,
                        std::size_t out_rows, std::size_t out_cols);

// Largest level count the shape admits (both dimensions divisible by 2^L).
std::size_t max_levels(std::size_t rows, std::size_t cols);

// Throws DimensionError, stating the feasible maximum, unless
// 1 <= levels <= max_levels(rows, cols).
void check_levels(std::size_t rows, std::size_t cols, std::size_t levels);

// Recursive analysis of the LL band. Requires levels >= 1 and both
// dimensions divisible by 2^levels.
MsvdPyramid decompose(const Matrix& img, std::size_t levels);

// Synthesizes from the deepest level outward.
Matrix reconstruct(const MsvdPyramid& p);

// Throws ValidationError describing the first broken pyramid invariant.
void validate(const MsvdPyramid& p);

}  // namespace msvd

#endif  // MSVD_TRANSFORM_H_
