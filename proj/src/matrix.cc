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

#include "msvd/matrix.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "msvd/errors.h"

namespace msvd {
namespace {

void CheckShape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void CheckFinite(std::span<const double> data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw NonFiniteError("non-finite matrix entry at flat index " +
                           std::to_string(i));
    }
  }
}

std::string ShapeString(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void CheckSameShape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         ShapeString(a) + " vs " + ShapeString(b));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  CheckShape(rows, cols);
  data_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  CheckShape(rows, cols);
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  CheckFinite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  CheckShape(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  CheckFinite(data_);
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Constant(std::size_t rows, std::size_t cols, double value) {
  return Matrix(rows, cols, std::vector<double>(rows * cols, value));
}

Matrix Matrix::Diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  CheckFinite(m.data());
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("multiply: inner dimension mismatch " +
                         ShapeString(a) + " * " + ShapeString(b));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  CheckSameShape(a, b, "subtract");
  Matrix out = a;
  auto o = out.mutable_data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bd[i];
  return out;
}

double frobenius_norm(const Matrix& a) {
  // Magnitudes are summed in sorted order so the result depends only on the
  // multiset of entries; any permutation of a gives a bit-identical norm.
  // Scaled accumulation (as in LAPACK's dnrm2) keeps the sum from overflowing.
  std::vector<double> mags(a.size());
  std::transform(a.data().begin(), a.data().end(), mags.begin(),
                 [](double x) { return std::abs(x); });
  std::sort(mags.begin(), mags.end());
  const double scale = mags.back();
  if (scale == 0.0) return 0.0;
  double ssq = 0.0;
  for (double x : mags) {
    const double r = x / scale;
    ssq += r * r;
  }
  return scale * std::sqrt(ssq);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  CheckSameShape(a, b, "max_abs_diff");
  double worst = 0.0;
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < ad.size(); ++i)
    worst = std::max(worst, std::abs(ad[i] - bd[i]));
  return worst;
}

Matrix block_to_columns(const Matrix& img) {
  if (img.rows() % 2 != 0) {
    throw DimensionError("block_to_columns: rows (" +
                         std::to_string(img.rows()) + ") must be even");
  }
  if (img.cols() % 2 != 0) {
    throw DimensionError("block_to_columns: cols (" +
                         std::to_string(img.cols()) + ") must be even");
  }
  const std::size_t block_rows = img.rows() / 2;
  const std::size_t block_cols = img.cols() / 2;
  Matrix out(4, block_rows * block_cols);
  for (std::size_t bi = 0; bi < block_rows; ++bi) {
    for (std::size_t bj = 0; bj < block_cols; ++bj) {
      const std::size_t j = bi * block_cols + bj;
      const std::size_t r = 2 * bi;
      const std::size_t c = 2 * bj;
      out(0, j) = img(r, c);
      out(1, j) = img(r + 1, c);
      out(2, j) = img(r, c + 1);
      out(3, j) = img(r + 1, c + 1);
    }
  }
  return out;
}

Matrix columns_to_block(const Matrix& cols4, std::size_t out_rows,
                        std::size_t out_cols) {
  if (cols4.rows() != 4) {
    throw DimensionError("columns_to_block: expected 4 rows, got " +
                         std::to_string(cols4.rows()));
  }
  if (out_rows % 2 != 0 || out_cols % 2 != 0 || out_rows == 0 ||
      out_cols == 0) {
    throw DimensionError("columns_to_block: output shape " +
                         std::to_string(out_rows) + "x" +
                         std::to_string(out_cols) + " must be even");
  }
  const std::size_t block_rows = out_rows / 2;
  const std::size_t block_cols = out_cols / 2;
  if (cols4.cols() != block_rows * block_cols) {
    throw DimensionError("columns_to_block: " + std::to_string(cols4.cols()) +
                         " columns cannot fill a " + std::to_string(out_rows) +
                         "x" + std::to_string(out_cols) + " image");
  }
  Matrix out(out_rows, out_cols);
  for (std::size_t bi = 0; bi < block_rows; ++bi) {
    for (std::size_t bj = 0; bj < block_cols; ++bj) {
      const std::size_t j = bi * block_cols + bj;
      const std::size_t r = 2 * bi;
      const std::size_t c = 2 * bj;
      out(r, c) = cols4(0, j);
      out(r + 1, c) = cols4(1, j);
      out(r, c + 1) = cols4(2, j);
      out(r + 1, c + 1) = cols4(3, j);
    }
  }
  return out;
}

}  // namespace msvd
