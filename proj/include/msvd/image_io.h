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

#ifndef MSVD_IMAGE_IO_H_
#define MSVD_IMAGE_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "msvd/matrix.h"
#include "msvd/metrics.h"

namespace msvd {

enum class BitDepth { k8, k16 };

constexpr std::uint32_t max_sample(BitDepth d) {
  return d == BitDepth::k8 ? 255u : 65535u;
}

// Grayscale samples, row-major. Every sample is <= max_sample(depth).
struct ImageBuffer {
  std::size_t rows = 0;
  std::size_t cols = 0;
  BitDepth depth = BitDepth::k8;
  std::vector<std::uint16_t> samples;

  bool operator==(const ImageBuffer&) const = default;
};

enum class PgmFormat { kPlain /* P2 */, kRaw /* P5 */ };

// Netpbm PGM, P2 or P5, with '#' comments in the header. maxval <= 255 maps
// to 8-bit, larger to 16-bit; samples are kept unscaled. Throws ParseError
// carrying the byte offset of the problem.
ImageBuffer parse_pgm(const std::string& bytes);
ImageBuffer read_pgm(const std::filesystem::path& path);

// Header is "P5\n<cols> <rows>\n<maxval>\n" (P2 likewise) with maxval 255 or
// 65535 by depth. P2 bodies put one image row per line.
std::string format_pgm(const ImageBuffer& buf,
                       PgmFormat format = PgmFormat::kRaw);
void write_pgm(const std::filesystem::path& path, const ImageBuffer& buf,
               PgmFormat format = PgmFormat::kRaw);

Matrix to_matrix(const ImageBuffer& buf);
// Rounds half away from zero and clamps to [0, max_sample(depth)].
ImageBuffer from_matrix(const Matrix& m, BitDepth depth);

// Samples above half the depth range (> 127 for 8-bit) are positive.
BinaryMask mask_from_image(const ImageBuffer& buf);

// Min-max stretch to 8 bits for viewing bands; a flat matrix maps to 0.
ImageBuffer visualize(const Matrix& m);

// Lossless double-precision matrix container:
//   8 bytes  magic "MSVDMAT1"
//   4 bytes  rows, uint32 little-endian
//   4 bytes  cols, uint32 little-endian
//   rows*cols IEEE-754 binary64 little-endian, row-major
std::string encode_raw_matrix(const Matrix& m);
Matrix decode_raw_matrix(const std::string& bytes);
void write_raw_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix read_raw_matrix(const std::filesystem::path& path);

struct ManifestEntry {
  std::string identifier;
  std::filesystem::path image_path;
  std::filesystem::path mask_path;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

// One "identifier, image path, mask path" record per line. Blank lines and
// lines starting with '#' are skipped. Relative paths resolve against the
// manifest's directory. When check_files is set, both referenced files must
// exist. Throws LoadError citing the 1-based line number.
DatasetManifest load_manifest(const std::filesystem::path& path,
                              bool check_files = true);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace msvd

#endif  // MSVD_IMAGE_IO_H_
