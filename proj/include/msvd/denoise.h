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

#ifndef MSVD_DENOISE_H_
#define MSVD_DENOISE_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "msvd/matrix.h"

namespace msvd {

enum class ShrinkMode { kSoft, kHard };

std::string_view to_string(ShrinkMode mode);
// "soft" or "hard"; throws RangeError otherwise.
ShrinkMode parse_shrink_mode(std::string_view text);

struct ExplicitThreshold {
  double lambda = 0.0;
};

// lambda = sigma_hat * sqrt(2 ln N), sigma_hat from the finest HH band.
struct UniversalThreshold {};

struct ThresholdSpec {
  ShrinkMode mode = ShrinkMode::kSoft;
  std::variant<ExplicitThreshold, UniversalThreshold> rule = UniversalThreshold{};

  static ThresholdSpec Universal(ShrinkMode mode = ShrinkMode::kSoft);
  // Throws RangeError for negative or non-finite lambda.
  static ThresholdSpec Explicit(double lambda,
                                ShrinkMode mode = ShrinkMode::kSoft);
};

struct NoiseSpec {
  double sigma = 0.0;  // on the 0..255 intensity scale
  std::uint64_t seed = 0;
};

// Adds i.i.d. N(0, sigma^2) noise. Normal draws come from the Box-Muller
// transform over std::mt19937_64 seeded with spec.seed, two uniforms per
// pair of pixels in row-major order, each uniform built from the top 53 bits
// of one generator output. Same seed gives bit-identical output; sigma == 0
// returns the input unchanged. Throws RangeError for negative sigma.
Matrix add_gaussian_noise(const Matrix& img, const NoiseSpec& spec);

// Median absolute value over 0.6745.
double estimate_sigma(const Matrix& hh);

Matrix shrink(const Matrix& band, double lambda, ShrinkMode mode);
std::size_t count_zeros(const Matrix& band);

struct LevelReport {
  double lambda = 0.0;
  std::size_t zeroed_lh = 0;
  std::size_t zeroed_hl = 0;
  std::size_t zeroed_hh = 0;
};

struct DenoiseReport {
  double sigma_hat = 0.0;  // always estimated, even for explicit thresholds
  bool universal = false;
  ShrinkMode mode = ShrinkMode::kSoft;
  std::vector<LevelReport> levels;  // finest first
};

// decompose -> shrink every detail band at every level -> reconstruct.
// The LL band is never touched.
std::pair<Matrix, DenoiseReport> denoise_msvd(const Matrix& img,
                                              std::size_t levels,
                                              const ThresholdSpec& spec);

Matrix denoise_lowrank(const Matrix& img, std::size_t k);

}  // namespace msvd

#endif  // MSVD_DENOISE_H_
