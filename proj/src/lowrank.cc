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

#include "msvd/lowrank.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "msvd/errors.h"

namespace msvd {

std::pair<Matrix, TruncationReport> truncate(const SvdFactors& f,
                                             std::size_t k) {
  if (k > f.s.size()) {
    throw RangeError("truncation rank " + std::to_string(k) +
                     " exceeds min(M, N) = " + std::to_string(f.s.size()));
  }
  const std::size_t m = f.u.rows();
  const std::size_t n = f.v.rows();
  Matrix out(m, n);
  TruncationReport report;
  report.k = k;
  for (std::size_t i = 0; i < f.s.size(); ++i) {
    const double e = f.s[i] * f.s[i];
    if (i < k) {
      report.kept_energy += e;
    } else {
      report.dropped_energy += e;
    }
  }
  report.frobenius_error = std::sqrt(report.dropped_energy);

  for (std::size_t t = 0; t < k; ++t) {
    const double st = f.s[t];
    if (st == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const double su = st * f.u(i, t);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += su * f.v(j, t);
    }
  }
  return {std::move(out), report};
}

Matrix truncate_image(const Matrix& img, std::size_t k) {
  return truncate_image_with_report(img, k).first;
}

std::pair<Matrix, TruncationReport> truncate_image_with_report(
    const Matrix& img, std::size_t k) {
  const std::size_t full = std::min(img.rows(), img.cols());
  if (k > full) {
    throw RangeError("truncation rank " + std::to_string(k) +
                     " exceeds min(rows, cols) = " + std::to_string(full));
  }
  return truncate(svd(img), k);
}

}  // namespace msvd
