// Copyright 2026 The clonerev Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clonerev/qstate.hpp"

namespace clonerev::cli {

inline constexpr std::string_view kVersion = "clonerev 0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsageError = 2,
  kInvariantViolation = 3,
  kRuntimeError = 4,
};

/// Parses H, plus, R or bloch:THETA,PHI (polar and azimuthal angle in
/// radians). Throws std::invalid_argument on anything else.
PureState parse_state_spec(std::string_view spec);

struct RunManifest {
  std::string command;
  std::uint64_t master_seed = 0;
  std::optional<std::string> config_path;
  std::vector<std::string> outputs;  // relative to the output directory
  std::string version{kVersion};
};

/// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clonerev::cli
