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

#ifndef MSVD_TOOLS_COMMANDS_H_
#define MSVD_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace msvd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitDataError = 1,   // I/O, parse, or per-entry data failures
  kExitUsageError = 2,  // bad flags, dimension and validation errors
};

// Entry point shared by the msvd binary and the tests. args excludes the
// program name. Human-readable output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Per-entry noise seed used by bench: splitmix64(seed ^ fnv1a64(identifier)).
// Depends only on the entry, never on scheduling.
std::uint64_t entry_seed(std::uint64_t seed, const std::string& identifier);

}  // namespace msvd::cli

#endif  // MSVD_TOOLS_COMMANDS_H_
