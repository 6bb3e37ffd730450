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

#include "msvd/transform.h"

#include <cmath>
#include <string>

#include "msvd/errors.h"
#include "msvd/svd.h"

namespace msvd {
namespace {

constexpr double kOrthonormalTol = 1e-10;

std::string Shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// Row r of t laid out row-major on a rows x cols grid.
Matrix RowAsBand(const Matrix& t, std::size_t r, std::size_t rows,
                 std::size_t cols) {
  auto src = t.row(r);
  return Matrix(rows, cols, std::vector<double>(src.begin(), src.end()));
}

void CheckOrthonormal(const Matrix& u, const std::string& where) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw ValidationError(where + ": transform must be 4x4, got " +
                          Shape(u.rows(), u.cols()));
  }
  const double dev = max_abs_diff(multiply(transpose(u), u),
                                  Matrix::Identity(4));
  if (!(dev <= kOrthonormalTol)) {
    throw ValidationError(where + ": transform is not orthonormal (max |U^T U - I| = " +
                          std::to_string(dev) + ")");
  }
}

void CheckBand(const Matrix& band, std::size_t rows, std::size_t cols,
               const std::string& what) {
  if (band.rows() != rows || band.cols() != cols) {
    throw ValidationError(what + " has shape " +
                          Shape(band.rows(), band.cols()) + ", expected " +
                          Shape(rows, cols));
  }
}

}  // namespace

std::pair<SubBands, Matrix> analyze_level(const Matrix& img) {
  if (img.rows() < 2 || img.cols() < 2) {
    throw DimensionError("analyze_level: image " +
                         Shape(img.rows(), img.cols()) +
                         " is smaller than one 2x2 block");
  }
  const Matrix a1 = block_to_columns(img);
  const std::size_t half_rows = img.rows() / 2;
  const std::size_t half_cols = img.cols() / 2;

  // The Gram-matrix path needs m >= 4; a lone 2x2 block or a single row/column
  // of blocks falls back to the general kernel.
  Matrix u = a1.cols() >= 4 ? left_singular_basis_4(a1) : svd(a1).u;
  const Matrix t = multiply(transpose(u), a1);

  SubBands bands{RowAsBand(t, 0, half_rows, half_cols),
                 RowAsBand(t, 1, half_rows, half_cols),
                 RowAsBand(t, 2, half_rows, half_cols),
                 RowAsBand(t, 3, half_rows, half_cols)};
  return {std::move(bands), std::move(u)};
}

Matrix synthesize_level(const SubBands& bands, const Matrix& u,
                        std::size_t out_rows, std::size_t out_cols) {
  CheckOrthonormal(u, "synthesize_level");
  if (out_rows % 2 != 0 || out_cols % 2 != 0 || out_rows == 0 ||
      out_cols == 0) {
    throw ValidationError("synthesize_level: output shape " +
                          Shape(out_rows, out_cols) + " must be even");
  }
  const std::size_t half_rows = out_rows / 2;
  const std::size_t half_cols = out_cols / 2;
  CheckBand(bands.ll, half_rows, half_cols, "LL band");
  CheckBand(bands.lh, half_rows, half_cols, "LH band");
  CheckBand(bands.hl, half_rows, half_cols, "HL band");
  CheckBand(bands.hh, half_rows, half_cols, "HH band");

  const std::size_t m = half_rows * half_cols;
  std::vector<double> t;
  t.reserve(4 * m);
  for (const Matrix* band : {&bands.ll, &bands.lh, &bands.hl, &bands.hh}) {
    t.insert(t.end(), band->data().begin(), band->data().end());
  }
  const Matrix a2 = multiply(u, Matrix(4, m, std::move(t)));
  return columns_to_block(a2, out_rows, out_cols);
}

std::size_t max_levels(std::size_t rows, std::size_t cols) {
  std::size_t levels = 0;
  while (rows % 2 == 0 && cols % 2 == 0 && rows >= 2 && cols >= 2) {
    rows /= 2;
    cols /= 2;
    ++levels;
  }
  return levels;
}

void check_levels(std::size_t rows, std::size_t cols, std::size_t levels) {
  if (levels == 0) {
    throw DimensionError("decompose: levels must be at least 1");
  }
  const std::size_t feasible = max_levels(rows, cols);
  if (levels > feasible) {
    throw DimensionError("decompose: " + Shape(rows, cols) +
                         " image supports at most " + std::to_string(feasible) +
                         " level(s), requested " + std::to_string(levels));
  }
}

MsvdPyramid decompose(const Matrix& img, std::size_t levels) {
  check_levels(img.rows(), img.cols(), levels);
  MsvdPyramid p{{}, img, img.rows(), img.cols()};
  p.levels.reserve(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    auto [bands, u] = analyze_level(p.top_ll);
    p.levels.push_back(PyramidLevel{std::move(bands.lh), std::move(bands.hl),
                                    std::move(bands.hh), std::move(u)});
    p.top_ll = std::move(bands.ll);
  }
  return p;
}

void validate(const MsvdPyramid& p) {
  if (p.levels.empty()) {
    throw ValidationError("pyramid has no levels");
  }
  std::size_t rows = p.rows;
  std::size_t cols = p.cols;
  for (std::size_t i = 0; i < p.levels.size(); ++i) {
    if (rows % 2 != 0 || cols % 2 != 0 || rows < 2 || cols < 2) {
      throw ValidationError("pyramid level " + std::to_string(i) +
                            " parent shape " + Shape(rows, cols) +
                            " is not even");
    }
    rows /= 2;
    cols /= 2;
    const PyramidLevel& level = p.levels[i];
    const std::string tag = "level " + std::to_string(i) + " ";
    CheckBand(level.lh, rows, cols, tag + "LH band");
    CheckBand(level.hl, rows, cols, tag + "HL band");
    CheckBand(level.hh, rows, cols, tag + "HH band");
    CheckOrthonormal(level.u, tag + "transform");
  }
  CheckBand(p.top_ll, rows, cols, "top LL band");
}

Matrix reconstruct(const MsvdPyramid& p) {
  validate(p);
  Matrix ll = p.top_ll;
  for (std::size_t i = p.levels.size(); i-- > 0;) {
    const PyramidLevel& level = p.levels[i];
    const std::size_t out_rows = level.lh.rows() * 2;
    const std::size_t out_cols = level.lh.cols() * 2;
    ll = synthesize_level(SubBands{std::move(ll), level.lh, level.hl, level.hh},
                          level.u, out_rows, out_cols);
  }
  return ll;
}

}  // namespace msvd
