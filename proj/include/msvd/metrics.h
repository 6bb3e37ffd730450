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

#ifndef MSVD_METRICS_H_
#define MSVD_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "msvd/matrix.h"

namespace msvd {

class BinaryMask {
 public:
  // All-clear mask. Dimensions must be positive.
  BinaryMask(std::size_t rows, std::size_t cols);
  // bits.size() must equal rows * cols; nonzero entries are set.
  BinaryMask(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return bits_.size(); }
  std::size_t count() const;

  bool operator()(std::size_t r, std::size_t c) const {
    return bits_[r * cols_ + c] != 0;
  }
  void set(std::size_t r, std::size_t c, bool on) {
    bits_[r * cols_ + c] = on ? 1 : 0;
  }
  bool at(std::size_t flat) const { return bits_[flat] != 0; }

  BinaryMask complement() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> bits_;
};

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

// Pixelwise tally with "set" as the positive class. Throws DimensionError on
// shape mismatch.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);

// (tp + tn) / total. Throws UndefinedMetricError when total == 0.
double binary_accuracy(const ConfusionCounts& c);

// |pred & gt| / |pred | gt|, and 1.0 when both masks are empty.
double iou(const ConfusionCounts& c);
double iou(const BinaryMask& pred, const BinaryMask& gt);

// 2 |pred & gt| / (|pred| + |gt|), and 1.0 when both masks are empty.
double dice(const ConfusionCounts& c);
double dice(const BinaryMask& pred, const BinaryMask& gt);

// The three segmentation columns for one mask pair. both_empty flags the
// 0/0 convention used for iou and dice.
struct SegmentationScores {
  ConfusionCounts counts;
  double accuracy = 0.0;
  double iou = 0.0;
  double dice = 0.0;
  bool both_empty = false;
};

SegmentationScores score(const BinaryMask& pred, const BinaryMask& gt);

double mse(const Matrix& a, const Matrix& b);

// 10 log10(peak^2 / mse). Identical inputs return +infinity; callers that
// serialize the value must handle it explicitly.
double psnr(const Matrix& a, const Matrix& b, double peak = 255.0);

}  // namespace msvd

#endif  // MSVD_METRICS_H_
