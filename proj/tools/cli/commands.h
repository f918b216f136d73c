// Copyright 2026 The owflab Authors
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

#ifndef OWFLAB_TOOLS_CLI_COMMANDS_H_
#define OWFLAB_TOOLS_CLI_COMMANDS_H_

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "cli/run_config.h"

namespace owflab::cli {

// Exit statuses.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

// "8", "15/2" or "7.5". Throws UsageError.
mpq_class ParseAlpha(const std::string& text);

// Runs config.command, writing to `out`. Core domain, budget and parameter
// errors surface as UsageError.
int RunCommand(const RunConfig& config, std::ostream& out);

// Full command line: parses flags (over an optional --config file),
// opens --out and dispatches. Diagnostics go to `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace owflab::cli

#endif  // OWFLAB_TOOLS_CLI_COMMANDS_H_
