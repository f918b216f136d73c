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

#ifndef OWFLAB_TOOLS_CLI_VERIFY_SUITE_H_
#define OWFLAB_TOOLS_CLI_VERIFY_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "owflab/bitsampler.h"

namespace owflab::cli {

struct SuiteOptions {
  std::uint64_t seed = 20261014;
  KProfile profile = KProfile::kPaper;
  unsigned threads = 1;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  nlohmann::json detail;  // deterministic given the options
};

// Criteria 1..10 run in process. The determinism criterion compares two
// whole runs and lives with the callers that can launch them.
inline constexpr int kInProcessCriteria = 10;

// Diagonal census under the fixed program format, pinned by length.
struct FrozenCensus {
  std::uint64_t length;
  std::uint64_t members;
};
inline constexpr FrozenCensus kFrozenCensus[] = {{4, 16}, {6, 64}, {8, 256}};

std::string CriterionName(int id);
CriterionResult RunCriterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> RunAllCriteria(const SuiteOptions& options);

nlohmann::json ResultsToJson(const std::vector<CriterionResult>& results);

}  // namespace owflab::cli

#endif  // OWFLAB_TOOLS_CLI_VERIFY_SUITE_H_
