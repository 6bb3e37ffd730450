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

#include "msvd/image_io.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string_view>

#include "msvd/errors.h"

namespace msvd {
namespace {

constexpr std::string_view kRawMagic = "MSVDMAT1";

class PgmCursor {
 public:
  explicit PgmCursor(const std::string& bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  // Offset of the most recent numeric token.
  std::size_t token_start() const { return token_start_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  // Skips whitespace and, when allowed, '#' comments running to end of line.
  void SkipSpace(bool comments) {
    while (pos_ < bytes_.size()) {
      const unsigned char c = static_cast<unsigned char>(bytes_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (comments && c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' &&
               bytes_[pos_] != '\r')
          ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t ReadUnsigned(const char* what, bool comments) {
    SkipSpace(comments);
    const std::size_t start = pos_;
    token_start_ = start;
    std::uint64_t value = 0;
    while (pos_ < bytes_.size() &&
           std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFull) {
        throw ParseError(std::string(what) + " is too large", start);
      }
      ++pos_;
    }
    if (pos_ == start) {
      if (at_end()) {
        throw ParseError(std::string("unexpected end of data reading ") + what,
                         pos_);
      }
      throw ParseError(std::string("expected ") + what, pos_);
    }
    return value;
  }

  unsigned char Byte() { return static_cast<unsigned char>(bytes_[pos_++]); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
  std::size_t token_start_ = 0;
};

void PutLe32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t GetLe(const std::string& in, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + i]))
         << (8 * i);
  }
  return v;
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return bytes;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

ImageBuffer parse_pgm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw ParseError("not a PGM file (magic must be P2 or P5)", 0);
  }
  const bool plain = bytes[1] == '2';
  PgmCursor cur(bytes);
  cur.Byte();
  cur.Byte();

  const std::uint64_t cols = cur.ReadUnsigned("width", true);
  const std::size_t width_at = cur.token_start();
  const std::uint64_t rows = cur.ReadUnsigned("height", true);
  if (cols == 0 || rows == 0) {
    throw ParseError("image dimensions must be positive", width_at);
  }
  const std::uint64_t maxval = cur.ReadUnsigned("maxval", true);
  const std::size_t maxval_at = cur.token_start();
  if (maxval == 0 || maxval > 65535) {
    throw ParseError("maxval " + std::to_string(maxval) +
                         " outside 1..65535",
                     maxval_at);
  }

  ImageBuffer buf;
  buf.rows = static_cast<std::size_t>(rows);
  buf.cols = static_cast<std::size_t>(cols);
  buf.depth = maxval <= 255 ? BitDepth::k8 : BitDepth::k16;
  const std::size_t count = buf.rows * buf.cols;
  buf.samples.resize(count);

  if (plain) {
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t v = cur.ReadUnsigned("sample", true);
      if (v > maxval) {
        throw ParseError("sample " + std::to_string(v) + " exceeds maxval",
                         cur.token_start());
      }
      buf.samples[i] = static_cast<std::uint16_t>(v);
    }
    return buf;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  if (cur.at_end() ||
      !std::isspace(static_cast<unsigned char>(bytes[cur.pos()]))) {
    throw ParseError("expected whitespace after maxval", cur.pos());
  }
  cur.Byte();
  const std::size_t width = maxval <= 255 ? 1 : 2;
  if (cur.remaining() < count * width) {
    throw ParseError("truncated raster: need " + std::to_string(count * width) +
                         " bytes, have " + std::to_string(cur.remaining()),
                     bytes.size());
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t at = cur.pos();
    std::uint32_t v = cur.Byte();
    if (width == 2) v = (v << 8) | cur.Byte();
    if (v > maxval) {
      throw ParseError("sample " + std::to_string(v) + " exceeds maxval", at);
    }
    buf.samples[i] = static_cast<std::uint16_t>(v);
  }
  return buf;
}

ImageBuffer read_pgm(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    return parse_pgm(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte_offset());
  }
}

std::string format_pgm(const ImageBuffer& buf, PgmFormat format) {
  if (buf.samples.size() != buf.rows * buf.cols || buf.rows == 0 ||
      buf.cols == 0) {
    throw DimensionError("image buffer shape does not match its samples");
  }
  const std::uint32_t maxval = max_sample(buf.depth);
  std::string out = format == PgmFormat::kRaw ? "P5\n" : "P2\n";
  out += std::to_string(buf.cols) + " " + std::to_string(buf.rows) + "\n" +
         std::to_string(maxval) + "\n";
  if (format == PgmFormat::kRaw) {
    out.reserve(out.size() + buf.samples.size() * (maxval > 255 ? 2 : 1));
    for (std::uint16_t s : buf.samples) {
      if (s > maxval) throw RangeError("sample exceeds depth range");
      if (maxval > 255) out.push_back(static_cast<char>(s >> 8));
      out.push_back(static_cast<char>(s & 0xFF));
    }
    return out;
  }
  for (std::size_t r = 0; r < buf.rows; ++r) {
    for (std::size_t c = 0; c < buf.cols; ++c) {
      const std::uint16_t s = buf.samples[r * buf.cols + c];
      if (s > maxval) throw RangeError("sample exceeds depth range");
      if (c > 0) out.push_back(' ');
      out += std::to_string(s);
    }
    out.push_back('\n');
  }
  return out;
}

void write_pgm(const std::filesystem::path& path, const ImageBuffer& buf,
               PgmFormat format) {
  write_file(path, format_pgm(buf, format));
}

Matrix to_matrix(const ImageBuffer& buf) {
  std::vector<double> data(buf.samples.begin(), buf.samples.end());
  return Matrix(buf.rows, buf.cols, std::move(data));
}

ImageBuffer from_matrix(const Matrix& m, BitDepth depth) {
  const double hi = static_cast<double>(max_sample(depth));
  ImageBuffer buf{m.rows(), m.cols(), depth, {}};
  buf.samples.reserve(m.size());
  for (double x : m.data()) {
    const double v = std::clamp(std::round(x), 0.0, hi);
    buf.samples.push_back(static_cast<std::uint16_t>(v));
  }
  return buf;
}

BinaryMask mask_from_image(const ImageBuffer& buf) {
  const std::uint32_t cut = max_sample(buf.depth) / 2;
  std::vector<std::uint8_t> bits(buf.samples.size());
  std::transform(buf.samples.begin(), buf.samples.end(), bits.begin(),
                 [cut](std::uint16_t s) { return s > cut ? 1 : 0; });
  return BinaryMask(buf.rows, buf.cols, std::move(bits));
}

ImageBuffer visualize(const Matrix& m) {
  const auto [lo_it, hi_it] = std::minmax_element(m.data().begin(), m.data().end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  Matrix scaled(m.rows(), m.cols());
  auto dst = scaled.mutable_data();
  auto src = m.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = span > 0.0 ? 255.0 * (src[i] - lo) / span : 0.0;
  }
  return from_matrix(scaled, BitDepth::k8);
}

std::string encode_raw_matrix(const Matrix& m) {
  if (m.rows() > 0xFFFFFFFFull || m.cols() > 0xFFFFFFFFull) {
    throw DimensionError("matrix too large for raw container");
  }
  std::string out(kRawMagic);
  PutLe32(out, static_cast<std::uint32_t>(m.rows()));
  PutLe32(out, static_cast<std::uint32_t>(m.cols()));
  out.reserve(out.size() + 8 * m.size());
  for (double x : m.data()) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i)
      out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
  return out;
}

Matrix decode_raw_matrix(const std::string& bytes) {
  constexpr std::size_t kHeader = 16;
  if (bytes.size() < kHeader ||
      std::string_view(bytes).substr(0, kRawMagic.size()) != kRawMagic) {
    throw ParseError("not a raw matrix dump (bad magic)", 0);
  }
  const std::size_t rows = GetLe(bytes, 8, 4);
  const std::size_t cols = GetLe(bytes, 12, 4);
  if (rows == 0 || cols == 0) {
    throw ParseError("raw matrix dimensions must be positive", 8);
  }
  const std::size_t expected = kHeader + 8 * rows * cols;
  if (bytes.size() != expected) {
    throw ParseError("raw matrix payload is " + std::to_string(bytes.size()) +
                         " bytes, expected " + std::to_string(expected),
                     std::min(bytes.size(), expected));
  }
  std::vector<double> data(rows * cols);
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = std::bit_cast<double>(GetLe(bytes, kHeader + 8 * i, 8));
    if (!std::isfinite(data[i])) {
      throw ParseError("non-finite value in raw matrix", kHeader + 8 * i);
    }
  }
  return Matrix(rows, cols, std::move(data));
}

void write_raw_matrix(const std::filesystem::path& path, const Matrix& m) {
  write_file(path, encode_raw_matrix(m));
}

Matrix read_raw_matrix(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    return decode_raw_matrix(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte_offset());
  }
}

DatasetManifest load_manifest(const std::filesystem::path& path,
                              bool check_files) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    throw LoadError(e.what(), 0);
  }
  const std::filesystem::path base = path.parent_path();
  DatasetManifest manifest;
  std::set<std::string> seen;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = trimmed.find(',', start);
      fields.push_back(Trim(std::string_view(trimmed).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 3) {
      throw LoadError("expected 3 comma-separated fields (identifier, image, "
                      "mask), found " + std::to_string(fields.size()),
                      number);
    }
    for (const auto& f : fields) {
      if (f.empty()) throw LoadError("empty field", number);
    }
    if (!seen.insert(fields[0]).second) {
      throw LoadError("duplicate identifier '" + fields[0] + "'", number);
    }
    ManifestEntry entry{fields[0], fields[1], fields[2]};
    if (entry.image_path.is_relative()) entry.image_path = base / entry.image_path;
    if (entry.mask_path.is_relative()) entry.mask_path = base / entry.mask_path;
    if (check_files) {
      for (const auto* p : {&entry.image_path, &entry.mask_path}) {
        if (!std::filesystem::exists(*p)) {
          throw LoadError("file not found: " + p->string(), number);
        }
      }
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

}  // namespace msvd
