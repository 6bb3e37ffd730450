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

#ifndef MSVD_TOOLS_REPORT_H_
#define MSVD_TOOLS_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace msvd::cli {

inline constexpr const char* kReportSchema = "msvd-report/1";
inline constexpr const char* kPyramidFormat = "msvd-pyramid/1";

// Structured run record. Keys serialize in sorted order; anything
// wall-clock-dependent lives under keys named "timings_ms" so that
// strip_timings() leaves a deterministic document.
struct RunReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  double total_ms = 0.0;

  nlohmann::json to_json() const;
  std::string dump() const;
};

// Removes every "timings_ms" member, recursively.
nlohmann::json strip_timings(nlohmann::json doc);

// Finite doubles as JSON numbers, +/-infinity as the strings "inf"/"-inf".
nlohmann::json number(double v);

}  // namespace msvd::cli

#endif  // MSVD_TOOLS_REPORT_H_
