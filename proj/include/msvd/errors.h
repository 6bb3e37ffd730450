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

#ifndef MSVD_ERRORS_H_
#define MSVD_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msvd {

// Shape or divisibility violation. Maps to exit code 2 in the CLI.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter outside its admissible range (e.g. truncation rank > min(M, N)).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A structure handed back to the library no longer satisfies its invariants,
// e.g. a non-orthonormal transform matrix inside a pyramid.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite value offered to a Matrix constructor.
class NonFiniteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Jacobi iteration hit its sweep cap with residual above tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Metric requested on empty input (0/0).
class UndefinedMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what + " (at byte " + std::to_string(byte_offset) +
                           ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // 1-based; 0 when the failure is not tied to a line (e.g. unreadable file).
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace msvd

#endif  // MSVD_ERRORS_H_
