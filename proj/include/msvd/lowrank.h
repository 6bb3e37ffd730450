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

#ifndef MSVD_LOWRANK_H_
#define MSVD_LOWRANK_H_

#include <cstddef>
#include <utility>

#include "msvd/matrix.h"
#include "msvd/svd.h"

namespace msvd {

struct TruncationReport {
  std::size_t k = 0;
  double kept_energy = 0.0;     // sum of s_i^2 for i < k
  double dropped_energy = 0.0;  // sum of s_i^2 for i >= k
  double frobenius_error = 0.0; // sqrt(dropped_energy)
};

// Sum of the k leading rank-one terms s_i * u_i * v_i^T. k == 0 yields the
// zero matrix; k > min(M, N) throws RangeError.
std::pair<Matrix, TruncationReport> truncate(const SvdFactors& f,
                                             std::size_t k);

// svd() followed by truncate(). Values are not clamped to any intensity range.
Matrix truncate_image(const Matrix& img, std::size_t k);
std::pair<Matrix, TruncationReport> truncate_image_with_report(
    const Matrix& img, std::size_t k);

}  // namespace msvd

#endif  // MSVD_LOWRANK_H_
