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

#ifndef OWFLAB_TOOLS_CLI_RUN_CONFIG_H_
#define OWFLAB_TOOLS_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace owflab::cli {

// Bad flags, bad config files or option combinations a command rejects.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::uint64_t seed = 20261014;
  unsigned beta = 2;
  std::optional<std::string> alpha;  // rational, "8" or "15/2"
  std::uint64_t n = 2;
  std::uint64_t ell = 0;             // 0: smallest feasible for n
  std::uint64_t trials = 10'000;
  std::string oracle;                // empty: power oracle matching beta
  std::string k_profile = "paper";
  std::string format;                // empty: the command's default
  std::string out;                   // empty: stdout
  std::uint64_t limit = 1000;        // density range
  std::uint64_t n_min = 4;           // threshold range
  std::uint64_t n_max = 100;
  std::uint64_t k = 10;              // bias audit
  std::uint64_t range = 3;
  std::vector<std::uint64_t> lengths = {4, 6, 8};  // census
  std::string input;                 // owf input word; empty: seeded
  unsigned threads = 1;
};

// Every field except `command`, keyed as in the config file. Used for the
// echo in output headers.
nlohmann::json ToJson(const RunConfig& config);

// Overwrites the fields present in `j`; unknown keys are a UsageError.
void ApplyJson(const nlohmann::json& j, RunConfig* config);

// Reads and applies a JSON config file.
void ApplyConfigFile(const std::string& path, RunConfig* config);

}  // namespace owflab::cli

#endif  // OWFLAB_TOOLS_CLI_RUN_CONFIG_H_
