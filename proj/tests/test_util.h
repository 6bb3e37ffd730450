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

// Seeded generators and independent numerical oracles shared by the tests.
// Nothing here calls into the SVD or transform code it is used to check.

#ifndef MSVD_TESTS_TEST_UTIL_H_
#define MSVD_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "msvd/matrix.h"
#include "msvd/metrics.h"

namespace msvd::testing {

inline std::filesystem::path FixtureDir() { return MSVD_FIXTURE_DIR; }

inline Matrix RandomMatrix(std::size_t rows, std::size_t cols,
                           std::uint64_t seed, double lo = -1.0,
                           double hi = 1.0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> data(rows * cols);
  for (double& x : data) x = dist(gen);
  return Matrix(rows, cols, std::move(data));
}

// Product of random rows x rank and rank x cols factors; rank <= min dims.
inline Matrix RandomLowRank(std::size_t rows, std::size_t cols,
                            std::size_t rank, std::uint64_t seed) {
  return multiply(RandomMatrix(rows, rank, seed),
                  RandomMatrix(rank, cols, seed ^ 0x5bd1e995u));
}

inline BinaryMask RandomMask(std::size_t rows, std::size_t cols,
                             double density, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution bit(density);
  std::vector<std::uint8_t> bits(rows * cols);
  for (auto& b : bits) b = bit(gen) ? 1 : 0;
  return BinaryMask(rows, cols, std::move(bits));
}

inline double OrthonormalityDeviation(const Matrix& q) {
  return max_abs_diff(multiply(transpose(q), q), Matrix::Identity(q.cols()));
}

// Plain triple-loop U diag(s) V^T, kept separate from the library's compose().
inline Matrix ReassembleFactors(const Matrix& u, const std::vector<double>& s,
                                const Matrix& v) {
  Matrix out(u.rows(), v.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < v.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) acc += u(i, k) * s[k] * v(j, k);
      out(i, j) = acc;
    }
  return out;
}

// Eigenvalues of a symmetric matrix, descending, by Householder reduction to
// tridiagonal form followed by Sturm-sequence bisection. Independent of the
// Jacobi code paths under test.
inline std::vector<double> SturmEigenvalues(const Matrix& sym) {
  const std::size_t n = sym.rows();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = sym(i, j);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::vector<double> v(n, 0.0);
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm += a[i][k] * a[i][k];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a[k + 1][k] > 0 ? -norm : norm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a[i][k];
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (double x : v) vnorm += x * x;
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (double& x : v) x /= vnorm;
    // a <- H a H, H = I - 2 v v^T
    std::vector<std::vector<double>> h(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        h[i][j] = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j];
    std::vector<std::vector<double>> tmp(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) tmp[i][j] += h[i][l] * a[l][j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) acc += tmp[i][l] * h[l][j];
        a[i][j] = acc;
      }
  }

  std::vector<double> d(n), e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = a[i][i + 1];

  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  // Number of eigenvalues strictly below x.
  auto count_below = [&](double x) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double off = i > 0 ? e[i - 1] * e[i - 1] : 0.0;
      q = d[i] - x - (i > 0 ? off / q : 0.0);
      if (q == 0.0) q = -1e-300;
      if (q < 0.0) ++count;
    }
    return count;
  };
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k-th smallest eigenvalue
    double a_lo = lo, a_hi = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a_lo + a_hi);
      if (count_below(mid) > k) {
        a_hi = mid;
      } else {
        a_lo = mid;
      }
    }
    values[k] = 0.5 * (a_lo + a_hi);
  }
  std::sort(values.rbegin(), values.rend());
  return values;
}

}  // namespace msvd::testing

#endif  // MSVD_TESTS_TEST_UTIL_H_
