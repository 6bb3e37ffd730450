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

#include <cmath>

#include <gtest/gtest.h>
#include "msvd/errors.h"
#include "test_util.h"

namespace msvd {
namespace {

using testing::RandomMatrix;

// Residual norm checked against the tail energy. When the tail is zero the
// comparison falls back to an absolute floor scaled by ||A||.
void ExpectEckartYoung(const Matrix& a, const SvdFactors& f, std::size_t k) {
  const auto [approx, report] = truncate(f, k);
  const double residual = frobenius_norm(subtract(a, approx));
  double tail = 0.0;
  for (std::size_t i = k; i < f.s.size(); ++i) tail += f.s[i] * f.s[i];
  tail = std::sqrt(tail);
  const double tol = std::max(1e-10 * tail, 1e-13 * frobenius_norm(a));
  EXPECT_NEAR(residual, tail, tol) << "k = " << k;
  EXPECT_NEAR(report.frobenius_error, tail, tol) << "k = " << k;
}

TEST(TruncateTest, FullRankReconstructs) {
  const Matrix a = RandomMatrix(12, 9, 1);
  const auto [approx, report] = truncate(svd(a), 9);
  EXPECT_LE(max_abs_diff(approx, a), 1e-9);
  EXPECT_EQ(report.k, 9u);
  EXPECT_NEAR(report.dropped_energy, 0.0, 1e-20);
}

TEST(TruncateTest, ZeroRankIsZeroMatrix) {
  const Matrix a = RandomMatrix(5, 7, 2);
  const auto [approx, report] = truncate(svd(a), 0);
  EXPECT_EQ(approx, Matrix(5, 7));
  EXPECT_EQ(report.kept_energy, 0.0);
}

TEST(TruncateTest, RankOneOuterProductIsExact) {
  const Matrix a = multiply(RandomMatrix(10, 1, 3), RandomMatrix(1, 8, 4));
  const auto [approx, report] = truncate(svd(a), 1);
  EXPECT_LE(max_abs_diff(approx, a), 1e-9);
}

TEST(TruncateTest, RankTooLargeThrows) {
  const SvdFactors f = svd(RandomMatrix(4, 6, 5));
  EXPECT_THROW(truncate(f, 5), RangeError);
  EXPECT_THROW(truncate_image(RandomMatrix(4, 6, 5), 5), RangeError);
}

TEST(TruncateTest, EckartYoungEveryRank) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix a = RandomMatrix(32, 32, 40 + seed);
    const SvdFactors f = svd(a);
    for (std::size_t k = 0; k <= 32; ++k) ExpectEckartYoung(a, f, k);
  }
}

TEST(TruncateTest, ReportEnergiesPartitionTotal) {
  const Matrix a = RandomMatrix(20, 14, 9);
  const SvdFactors f = svd(a);
  const double norm = frobenius_norm(a);
  double previous_kept = -1.0;
  for (std::size_t k = 0; k <= 14; ++k) {
    const TruncationReport r = truncate(f, k).second;
    EXPECT_NEAR(r.kept_energy + r.dropped_energy, norm * norm,
                1e-8 * norm * norm);
    EXPECT_GE(r.kept_energy, previous_kept);
    EXPECT_GE(r.frobenius_error, 0.0);
    previous_kept = r.kept_energy;
  }
}

TEST(TruncateImageTest, ConstantImageRankOne) {
  const Matrix img = Matrix::Constant(16, 24, 93.0);
  EXPECT_LE(max_abs_diff(truncate_image(img, 1), img), 1e-9);
}

TEST(TruncateImageTest, FullRankIdentity) {
  const Matrix img = RandomMatrix(16, 16, 6, 0.0, 255.0);
  EXPECT_LE(max_abs_diff(truncate_image(img, 16), img), 1e-9);
}

TEST(TruncateImageTest, ErrorNonIncreasingInK) {
  const Matrix img = RandomMatrix(24, 24, 77, 0.0, 255.0);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= 24; ++k) {
    const double err = frobenius_norm(subtract(img, truncate_image(img, k)));
    EXPECT_LE(err, previous + 1e-9) << "k = " << k;
    previous = err;
  }
}

}  // namespace
}  // namespace msvd
