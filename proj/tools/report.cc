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

#include "report.h"

#include <cmath>

#include "version.h"

namespace msvd::cli {

nlohmann::json RunReport::to_json() const {
  nlohmann::json doc;
  doc["schema"] = kReportSchema;
  doc["tool_version"] = kToolVersion;
  doc["command"] = command;
  doc["parameters"] = parameters;
  doc["results"] = results;
  doc["summary"] = summary;
  doc["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  doc["timings_ms"] = {{"total", total_ms}};
  return doc;
}

std::string RunReport::dump() const { return to_json().dump(2) + "\n"; }

nlohmann::json strip_timings(nlohmann::json doc) {
  if (doc.is_object()) {
    doc.erase("timings_ms");
    for (auto& [key, value] : doc.items()) value = strip_timings(value);
  } else if (doc.is_array()) {
    for (auto& value : doc) value = strip_timings(value);
  }
  return doc;
}

nlohmann::json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace msvd::cli
