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

#include "owflab/languages.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "owflab/errors.h"

namespace owflab {
namespace {

// Stores x^r in *out; false if it overflows 64 bits.
bool CheckedPower(std::uint64_t x, unsigned r, std::uint64_t* out) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < r; ++i) {
    acc *= x;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return false;
  }
  *out = static_cast<std::uint64_t>(acc);
  return true;
}

bool CanonicalPowerMember(const Word& w, unsigned r) {
  if (!w.IsCanonical()) return false;
  if (w.size() <= 64) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < w.size(); ++i) v = (v << 1) | w[i];
    return IsPerfectPower(v, r);
  }
  return IsPerfectPower(WordValue(w), r);
}

}  // namespace

bool IsPerfectPower(std::uint64_t v, unsigned r) {
  if (v == 0 || r == 0) return false;
  if (r == 1 || v == 1) return true;
  const auto guess = static_cast<std::uint64_t>(
      std::llround(std::pow(static_cast<long double>(v), 1.0L / r)));
  const std::uint64_t lo = guess > 1 ? guess - 1 : 1;
  for (std::uint64_t x = lo; x <= guess + 1; ++x) {
    std::uint64_t p;
    if (!CheckedPower(x, r, &p)) break;
    if (p == v) return true;
    if (p > v) break;
  }
  return false;
}

bool IsPerfectPower(const mpz_class& v, unsigned r) {
  if (v < 1 || r == 0) return false;
  mpz_class root;
  return mpz_root(root.get_mpz_t(), v.get_mpz_t(), r) != 0;
}

bool SqMember(const Word& w) { return CanonicalPowerMember(w, 2); }

bool PowerMember(const Word& w, unsigned r) {
  if (r < 2) throw DomainError("PowerMember: r must be >= 2");
  return CanonicalPowerMember(w, r);
}

LanguageOracle SquareOracle() {
  return LanguageOracle{"sq", SqMember, 2.0, 0.3, 16};
}

LanguageOracle PowerOracle(unsigned r) {
  if (r < 2) throw DomainError("PowerOracle: r must be >= 2");
  if (r == 2) return SquareOracle();
  LanguageOracle lang{r == 3 ? "cube" : "power" + std::to_string(r),
                      [r](const Word& w) { return CanonicalPowerMember(w, r); },
                      static_cast<double>(r), 0.0, 16};
  lang.d = CalibrateLowerConstant(lang, lang.x0, std::uint64_t{1} << 16);
  return lang;
}

LanguageOracle FullOracle() {
  return LanguageOracle{"full", [](const Word&) { return true; }, 1.0, 1.0, 1};
}

LanguageOracle EmptyOracle() {
  return LanguageOracle{"empty", [](const Word&) { return false; }, 1.0, 0.0,
                        1};
}

LanguageOracle OddOracle() {
  return LanguageOracle{
      "odd", [](const Word& w) { return !w.empty() && w[w.size() - 1] == 1; },
      1.0, 0.0, 1};
}

LanguageOracle LengthCappedOracle(std::size_t max_length) {
  return LanguageOracle{
      "length<=" + std::to_string(max_length),
      [max_length](const Word& w) { return w.size() <= max_length; }, 1.0, 0.0,
      1};
}

LanguageOracle OracleByName(const std::string& name) {
  if (name == "sq" || name == "square") return SquareOracle();
  if (name == "cube") return PowerOracle(3);
  if (name == "full") return FullOracle();
  if (name == "empty") return EmptyOracle();
  if (name == "odd") return OddOracle();
  if (name.rfind("power", 0) == 0 && name.size() > 5) {
    unsigned r = 0;
    for (char c : name.substr(5)) {
      if (c < '0' || c > '9') throw ParameterError("unknown oracle: " + name);
      r = r * 10 + static_cast<unsigned>(c - '0');
      if (r > 64) throw ParameterError("unknown oracle: " + name);
    }
    return PowerOracle(r);
  }
  throw ParameterError("unknown oracle: " + name);
}

LanguageOracle Intersect(const LanguageOracle& a, const LanguageOracle& b) {
  return LanguageOracle{
      a.name + "&" + b.name,
      [ma = a.member, mb = b.member](const Word& w) { return ma(w) && mb(w); },
      std::max(a.beta, b.beta), 0.0, std::max(a.x0, b.x0)};
}

std::uint64_t Density(const LanguageOracle& lang, std::uint64_t x,
                      std::uint64_t budget) {
  if (x == 0) throw DomainError("Density: x must be >= 1");
  if (x > budget) throw BudgetError("Density: x exceeds enumeration budget");
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (lang.member(GoedelInverse(n))) ++count;
  }
  return count;
}

DensityTable BuildDensityTable(const LanguageOracle& lang, std::uint64_t limit,
                               unsigned threads, std::uint64_t budget) {
  if (limit > budget) {
    throw BudgetError("BuildDensityTable: limit exceeds enumeration budget");
  }
  DensityTable table;
  table.limit = limit;
  table.counts.assign(limit + 1, 0);
  if (limit == 0) return table;

  // Each worker marks membership for a contiguous block; the prefix sum is
  // taken serially afterwards.
  std::vector<std::uint8_t> hit(limit + 1, 0);
  threads = std::max(1u, std::min<unsigned>(threads, 64));
  const std::uint64_t block = (limit + threads - 1) / threads;
  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t n = lo; n <= hi; ++n) {
      hit[n] = lang.member(GoedelInverse(n)) ? 1 : 0;
    }
  };
  if (threads == 1) {
    work(1, limit);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = 1 + t * block;
      if (lo > limit) break;
      pool.emplace_back(work, lo, std::min(limit, lo + block - 1));
    }
  }
  for (std::uint64_t n = 1; n <= limit; ++n) {
    table.counts[n] = table.counts[n - 1] + hit[n];
  }
  return table;
}

DensityBoundReport CheckDensityBounds(const LanguageOracle& lang,
                                      const DensityTable& table,
                                      bool check_lower) {
  DensityBoundReport report;
  report.x0 = lang.x0;
  report.limit = table.limit;
  for (std::uint64_t x = std::max<std::uint64_t>(lang.x0, 1); x <= table.limit;
       ++x) {
    const std::uint64_t dens = table.counts[x];
    const bool lower_bad =
        check_lower &&
        lang.d * std::pow(static_cast<double>(x), 1.0 / lang.beta) >
            static_cast<double>(dens);
    const bool upper_bad =
        static_cast<unsigned __int128>(dens) * dens > x;
    if (lower_bad) ++report.lower_violations;
    if (upper_bad) ++report.upper_violations;
    if (lower_bad || upper_bad) {
      report.violations.push_back({x, dens, lower_bad, upper_bad});
    }
  }
  return report;
}

DensityBoundReport CheckDensityBounds(const LanguageOracle& lang,
                                      std::uint64_t limit, bool check_lower) {
  return CheckDensityBounds(lang, BuildDensityTable(lang, limit), check_lower);
}

double CalibrateLowerConstant(const LanguageOracle& lang, std::uint64_t x0,
                              std::uint64_t limit) {
  if (x0 == 0 || x0 > limit) throw DomainError("Calibrate: need 1 <= x0 <= X");
  const DensityTable table = BuildDensityTable(lang, limit);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t x = x0; x <= limit; ++x) {
    const double ratio = static_cast<double>(table.counts[x]) /
                         std::pow(static_cast<double>(x), 1.0 / lang.beta);
    best = std::min(best, ratio);
  }
  return best;
}

void WriteDensityCsv(std::ostream& out, const LanguageOracle& lang,
                     const DensityTable& table) {
  out << "x,dens,lower_bound,upper_bound\n";
  char buf[128];
  for (std::uint64_t x = 1; x <= table.limit; ++x) {
    const double xd = static_cast<double>(x);
    std::snprintf(buf, sizeof(buf), "%llu,%llu,%.9g,%.9g\n",
                  static_cast<unsigned long long>(x),
                  static_cast<unsigned long long>(table.counts[x]),
                  lang.d * std::pow(xd, 1.0 / lang.beta), std::sqrt(xd));
    out << buf;
  }
}

}  // namespace owflab
