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

#include "msvd/denoise.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "msvd/errors.h"
#include "msvd/lowrank.h"
#include "msvd/transform.h"

namespace msvd {
namespace {

constexpr double kMadScale = 0.6745;

double Uniform53(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string_view to_string(ShrinkMode mode) {
  return mode == ShrinkMode::kSoft ? "soft" : "hard";
}

ShrinkMode parse_shrink_mode(std::string_view text) {
  if (text == "soft") return ShrinkMode::kSoft;
  if (text == "hard") return ShrinkMode::kHard;
  throw RangeError("unknown shrink mode '" + std::string(text) +
                   "' (expected soft or hard)");
}

ThresholdSpec ThresholdSpec::Universal(ShrinkMode mode) {
  return ThresholdSpec{mode, UniversalThreshold{}};
}

ThresholdSpec ThresholdSpec::Explicit(double lambda, ShrinkMode mode) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw RangeError("threshold must be a finite non-negative value");
  }
  return ThresholdSpec{mode, ExplicitThreshold{lambda}};
}

Matrix add_gaussian_noise(const Matrix& img, const NoiseSpec& spec) {
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) {
    throw RangeError("noise sigma must be finite and non-negative");
  }
  if (spec.sigma == 0.0) return img;
  std::mt19937_64 gen(spec.seed);
  Matrix out = img;
  auto data = out.mutable_data();
  for (std::size_t i = 0; i < data.size(); i += 2) {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - Uniform53(gen);
    const double u2 = Uniform53(gen);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    data[i] += spec.sigma * radius * std::cos(angle);
    if (i + 1 < data.size()) data[i + 1] += spec.sigma * radius * std::sin(angle);
  }
  return out;
}

double estimate_sigma(const Matrix& hh) {
  std::vector<double> mags(hh.size());
  std::transform(hh.data().begin(), hh.data().end(), mags.begin(),
                 [](double x) { return std::abs(x); });
  const std::size_t n = mags.size();
  const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(mags.begin(), mid, mags.end());
  double median = *mid;
  if (n % 2 == 0) {
    median = 0.5 * (median + *std::max_element(mags.begin(), mid));
  }
  return median / kMadScale;
}

Matrix shrink(const Matrix& band, double lambda, ShrinkMode mode) {
  if (!(lambda >= 0.0)) {
    throw RangeError("shrink: threshold must be non-negative");
  }
  Matrix out = band;
  for (double& x : out.mutable_data()) {
    const double mag = std::abs(x);
    if (mode == ShrinkMode::kHard) {
      if (!(mag > lambda)) x = 0.0;
    } else {
      x = mag > lambda ? std::copysign(mag - lambda, x) : 0.0;
    }
  }
  return out;
}

std::size_t count_zeros(const Matrix& band) {
  return static_cast<std::size_t>(
      std::count(band.data().begin(), band.data().end(), 0.0));
}

std::pair<Matrix, DenoiseReport> denoise_msvd(const Matrix& img,
                                              std::size_t levels,
                                              const ThresholdSpec& spec) {
  MsvdPyramid pyramid = decompose(img, levels);

  DenoiseReport report;
  report.mode = spec.mode;
  report.sigma_hat = estimate_sigma(pyramid.levels.front().hh);
  double lambda = 0.0;
  if (std::holds_alternative<UniversalThreshold>(spec.rule)) {
    report.universal = true;
    const double n = static_cast<double>(img.size());
    lambda = report.sigma_hat * std::sqrt(2.0 * std::log(n));
  } else {
    lambda = std::get<ExplicitThreshold>(spec.rule).lambda;
  }

  for (PyramidLevel& level : pyramid.levels) {
    level.lh = shrink(level.lh, lambda, spec.mode);
    level.hl = shrink(level.hl, lambda, spec.mode);
    level.hh = shrink(level.hh, lambda, spec.mode);
    report.levels.push_back(LevelReport{lambda, count_zeros(level.lh),
                                        count_zeros(level.hl),
                                        count_zeros(level.hh)});
  }
  return {reconstruct(pyramid), std::move(report)};
}

Matrix denoise_lowrank(const Matrix& img, std::size_t k) {
  return truncate_image(img, k);
}

}  // namespace msvd
