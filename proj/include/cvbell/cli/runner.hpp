// Copyright 2026 The cvbell Authors
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

#include <filesystem>
#include <string>
#include <vector>

#include "cvbell/cli/config.hpp"

namespace cvbell::cli {

struct RunSummary {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> notes;  // one-line human-readable findings
};

/// Runs the configured experiment and writes its artifacts.  Library errors
/// (TruncationError, NegativeProbability, ...) propagate to the caller.
RunSummary run(const RunConfig& config);

/// Exit status for an exception escaping run(): 1 configuration, 2 truncation
/// guard, 3 numerical consistency, 4 output, 5 anything else.
int exit_code_for(const std::exception& e);

}  // namespace cvbell::cli
