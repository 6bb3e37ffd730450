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

#include "msvd/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "msvd/errors.h"

namespace msvd {
namespace {

void CheckSameShape(const BinaryMask& a, const BinaryMask& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("mask shape mismatch: " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

BinaryMask::BinaryMask(std::size_t rows, std::size_t cols)
    : BinaryMask(rows, cols, std::vector<std::uint8_t>(rows * cols, 0)) {}

BinaryMask::BinaryMask(std::size_t rows, std::size_t cols,
                       std::vector<std::uint8_t> bits)
    : rows_(rows), cols_(cols), bits_(std::move(bits)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("mask dimensions must be positive");
  }
  if (bits_.size() != rows * cols) {
    throw DimensionError("mask data length " + std::to_string(bits_.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BinaryMask BinaryMask::complement() const {
  BinaryMask out = *this;
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
  CheckSameShape(pred, gt);
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred.at(i);
    const bool g = gt.at(i);
    if (p && g) {
      ++c.tp;
    } else if (!p && !g) {
      ++c.tn;
    } else if (p) {
      ++c.fp;
    } else {
      ++c.fn;
    }
  }
  return c;
}

double binary_accuracy(const ConfusionCounts& c) {
  if (c.total() == 0) {
    throw UndefinedMetricError("binary accuracy of an empty comparison");
  }
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

double iou(const ConfusionCounts& c) {
  const std::uint64_t uni = c.tp + c.fp + c.fn;
  if (uni == 0) return 1.0;
  return static_cast<double>(c.tp) / static_cast<double>(uni);
}

double iou(const BinaryMask& pred, const BinaryMask& gt) {
  return iou(confusion(pred, gt));
}

double dice(const ConfusionCounts& c) {
  const std::uint64_t denom = 2 * c.tp + c.fp + c.fn;
  if (denom == 0) return 1.0;
  return static_cast<double>(2 * c.tp) / static_cast<double>(denom);
}

double dice(const BinaryMask& pred, const BinaryMask& gt) {
  return dice(confusion(pred, gt));
}

SegmentationScores score(const BinaryMask& pred, const BinaryMask& gt) {
  SegmentationScores s;
  s.counts = confusion(pred, gt);
  s.accuracy = binary_accuracy(s.counts);
  s.iou = iou(s.counts);
  s.dice = dice(s.counts);
  s.both_empty = s.counts.tp + s.counts.fp + s.counts.fn == 0;
  return s;
}

double mse(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("mse: shape mismatch");
  }
  auto ad = a.data();
  auto bd = b.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < ad.size(); ++i) {
    const double d = ad[i] - bd[i];
    acc += d * d;
  }
  return acc / static_cast<double>(ad.size());
}

double psnr(const Matrix& a, const Matrix& b, double peak) {
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / err);
}

}  // namespace msvd
