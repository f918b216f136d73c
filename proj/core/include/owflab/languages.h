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

#ifndef OWFLAB_LANGUAGES_H_
#define OWFLAB_LANGUAGES_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "owflab/words.h"

namespace owflab {

// A decidable language together with the density exponent it is expected to
// realize: d * x^(1/beta) <= dens(x) for x >= x0.
struct LanguageOracle {
  std::string name;
  std::function<bool(const Word&)> member;
  double beta = 1.0;
  double d = 0.0;
  std::uint64_t x0 = 1;

  bool operator()(const Word& w) const { return member(w); }
};

inline constexpr std::uint64_t kDefaultDensityBudget = 10'000'000;

// Canonical words 1(0|1)* whose value is a positive perfect square.
bool SqMember(const Word& w);

// Canonical words whose value equals x^r for some x >= 1.
bool PowerMember(const Word& w, unsigned r);

// True iff v = x^r for some integer x >= 1.
bool IsPerfectPower(std::uint64_t v, unsigned r);
bool IsPerfectPower(const mpz_class& v, unsigned r);

// Squares, with the lower-bound constants d = 0.3, x0 = 16.
LanguageOracle SquareOracle();
// r-th powers, r >= 2; d is calibrated over [x0, 2^16] on construction.
LanguageOracle PowerOracle(unsigned r);
LanguageOracle FullOracle();
LanguageOracle EmptyOracle();
// Words with odd value (last bit 1).
LanguageOracle OddOracle();
// All words of length <= max_length.
LanguageOracle LengthCappedOracle(std::size_t max_length);
// Looks a surrogate up by name: sq, cube, power<r>, full, empty, odd.
LanguageOracle OracleByName(const std::string& name);

// Conjunction of the two predicates. The exponent is the larger of the two
// and the lower-bound constant is left uncalibrated (d = 0).
LanguageOracle Intersect(const LanguageOracle& a, const LanguageOracle& b);

// Cumulative density: counts[x] = |{w in L : gn(w) <= x}| for x = 0..limit.
struct DensityTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::uint64_t x) const { return counts.at(x); }
};

// Exact count by enumerating gn^{-1}(1..x). Throws DomainError for x = 0 and
// BudgetError when x > budget.
std::uint64_t Density(const LanguageOracle& lang, std::uint64_t x,
                      std::uint64_t budget = kDefaultDensityBudget);

// Table for x = 0..limit. The range is split across `threads` workers and
// merged; the result does not depend on the thread count.
DensityTable BuildDensityTable(const LanguageOracle& lang, std::uint64_t limit,
                               unsigned threads = 1,
                               std::uint64_t budget = kDefaultDensityBudget);

struct DensityViolation {
  std::uint64_t x;
  std::uint64_t dens;
  bool lower_violated;
  bool upper_violated;
};

struct DensityBoundReport {
  std::uint64_t x0 = 0;
  std::uint64_t limit = 0;
  std::uint64_t lower_violations = 0;
  std::uint64_t upper_violations = 0;
  std::vector<DensityViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks d * x^(1/beta) <= dens(x) and dens(x) <= sqrt(x) on [lang.x0, limit].
// Pass check_lower = false to test the square-root ceiling alone.
DensityBoundReport CheckDensityBounds(const LanguageOracle& lang,
                                      std::uint64_t limit,
                                      bool check_lower = true);
DensityBoundReport CheckDensityBounds(const LanguageOracle& lang,
                                      const DensityTable& table,
                                      bool check_lower = true);

// Largest d with d * x^(1/beta) <= dens(x) on [x0, limit].
double CalibrateLowerConstant(const LanguageOracle& lang, std::uint64_t x0,
                              std::uint64_t limit);

// Rows (x, dens, lower_bound, upper_bound) for x = 1..limit.
void WriteDensityCsv(std::ostream& out, const LanguageOracle& lang,
                     const DensityTable& table);

}  // namespace owflab

#endif  // OWFLAB_LANGUAGES_H_
