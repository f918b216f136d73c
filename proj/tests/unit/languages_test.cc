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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "owflab/errors.h"
#include "support/test_rng.h"

namespace owflab {
namespace {

// Independent reference: walk n = 1..x, strip the leading 1 of n by bit
// arithmetic and test the remaining bits directly, without Word.
struct Decoded {
  std::uint64_t value;
  unsigned length;
  bool canonical;
};

Decoded DecodeIndex(std::uint64_t n) {
  const unsigned len = 63 - __builtin_clzll(n);
  const std::uint64_t v = n - (std::uint64_t{1} << len);
  const bool canonical = len > 0 && (v >> (len - 1)) == 1;
  return {v, len, canonical};
}

bool IsSquare(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

std::uint64_t ReferenceSqDensity(std::uint64_t x, bool odd_only = false) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    const Decoded d = DecodeIndex(n);
    if (d.canonical && d.value >= 1 && IsSquare(d.value) &&
        (!odd_only || d.value % 2 == 1)) {
      ++count;
    }
  }
  return count;
}

TEST(SqMemberTest, Examples) {
  EXPECT_TRUE(SqMember(Word::FromUint64(16)));
  EXPECT_FALSE(SqMember(Word::FromUint64(15)));
  EXPECT_FALSE(SqMember(Word()));
  EXPECT_TRUE(SqMember(Word::FromString("1")));
  // Only the canonical spelling of an integer is a member.
  EXPECT_FALSE(SqMember(Word::FromString("0100")));
}

TEST(SqMemberTest, LongWordsUseBigIntegers) {
  mpz_class x("123456789012345678901234567890");
  EXPECT_TRUE(SqMember(Word::FromInteger(x * x)));
  EXPECT_FALSE(SqMember(Word::FromInteger(x * x + 1)));
}

TEST(PowerOracleTest, SquareCaseMatchesSqOnShortWords) {
  const LanguageOracle p2 = PowerOracle(2);
  for (std::uint64_t n = 1; n < (std::uint64_t{1} << 17); ++n) {
    const Word w = GoedelInverse(n);
    ASSERT_EQ(p2(w), SqMember(w)) << w.ToString();
  }
}

TEST(PowerOracleTest, Cubes) {
  const LanguageOracle cube = PowerOracle(3);
  EXPECT_EQ(cube.name, "cube");
  EXPECT_EQ(cube.beta, 3.0);
  EXPECT_TRUE(cube(Word::FromUint64(27)));
  EXPECT_FALSE(cube(Word::FromUint64(26)));
  EXPECT_THROW(PowerOracle(1), DomainError);
}

TEST(PowerOracleTest, CubeDensityInBand) {
  const std::uint64_t x = 10'000;
  const std::uint64_t dens = Density(PowerOracle(3), x);
  std::uint64_t reference = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    const Decoded d = DecodeIndex(n);
    if (!d.canonical) continue;
    const auto r = static_cast<std::uint64_t>(std::llround(std::cbrt(d.value)));
    if (r * r * r == d.value) ++reference;
  }
  EXPECT_EQ(dens, reference);
  const double c = std::cbrt(static_cast<double>(x));
  EXPECT_GE(dens, 0.5 * c / std::cbrt(5.0));
  EXPECT_LE(dens, c);
}

TEST(IsPerfectPowerTest, Agrees) {
  for (std::uint64_t v = 1; v < 5000; ++v) {
    ASSERT_EQ(IsPerfectPower(v, 2), IsSquare(v)) << v;
    ASSERT_EQ(IsPerfectPower(v, 2),
              IsPerfectPower(mpz_class(static_cast<unsigned long>(v)), 2));
  }
  EXPECT_TRUE(IsPerfectPower(std::uint64_t{1} << 60, 3));
  EXPECT_FALSE(IsPerfectPower(std::uint64_t{0}, 2));
}

TEST(DensityTest, SquareExamples) {
  const LanguageOracle sq = SquareOracle();
  EXPECT_EQ(Density(sq, 2), 0u);
  EXPECT_EQ(Density(sq, 12), 2u);
  EXPECT_EQ(Density(sq, 25), 3u);
}

TEST(DensityTest, Errors) {
  EXPECT_THROW(Density(SquareOracle(), 0), DomainError);
  EXPECT_THROW(Density(SquareOracle(), 101, 100), BudgetError);
  EXPECT_THROW(BuildDensityTable(SquareOracle(), 101, 1, 100), BudgetError);
}

TEST(DensityTest, TableMatchesReference) {
  const DensityTable t = BuildDensityTable(SquareOracle(), 5000);
  for (std::uint64_t x : {1, 2, 3, 12, 25, 100, 777, 4096, 5000}) {
    EXPECT_EQ(t.at(x), ReferenceSqDensity(x)) << x;
  }
}

TEST(DensityTest, ThreadCountDoesNotMatter) {
  const DensityTable a = BuildDensityTable(SquareOracle(), 20'000, 1);
  const DensityTable b = BuildDensityTable(SquareOracle(), 20'000, 3);
  EXPECT_EQ(a.counts, b.counts);
}

TEST(DensityBoundsTest, SquareLowerAndUpper) {
  const DensityBoundReport r = CheckDensityBounds(SquareOracle(), 100'000);
  EXPECT_TRUE(r.ok()) << r.lower_violations << " " << r.upper_violations;
  const DensityBoundReport u =
      CheckDensityBounds(SquareOracle(), 100'000, /*check_lower=*/false);
  EXPECT_EQ(u.upper_violations, 0u);
}

TEST(DensityBoundsTest, SquareConstantIsAdmissible) {
  // d = 0.3 on [16, 10^5] is what the oracle ships with.
  EXPECT_GE(CalibrateLowerConstant(SquareOracle(), 16, 100'000), 0.3);
}

TEST(DensityBoundsTest, FullLanguageBreaksSqrtCeiling) {
  const DensityTable t = BuildDensityTable(FullOracle(), 100);
  for (std::uint64_t x = 1; x <= 100; ++x) EXPECT_EQ(t.at(x), x);
  const DensityBoundReport r = CheckDensityBounds(FullOracle(), t, false);
  // dens(x) = x > sqrt(x) for every x except 1.
  EXPECT_EQ(r.upper_violations, 99u);
}

TEST(IntersectTest, IdentityAndAnnihilator) {
  const LanguageOracle sq = SquareOracle();
  const DensityTable a = BuildDensityTable(sq, 10'000);
  const DensityTable b = BuildDensityTable(Intersect(sq, FullOracle()), 10'000);
  const DensityTable z = BuildDensityTable(Intersect(sq, EmptyOracle()), 10'000);
  EXPECT_EQ(a.counts, b.counts);
  for (std::uint64_t c : z.counts) EXPECT_EQ(c, 0u);
}

TEST(IntersectTest, OddSquaresAt57) {
  // Odd squares 1, 9, 25 have Gödel numbers 3, 25, 57.
  const std::uint64_t d = Density(Intersect(SquareOracle(), OddOracle()), 57);
  EXPECT_EQ(d, ReferenceSqDensity(57, /*odd_only=*/true));
  EXPECT_EQ(d, 3u);
}

LanguageOracle RandomOracle(std::uint64_t salt) {
  return LanguageOracle{"random", [salt](const Word& w) {
                          testing::TestRng rng(GoedelNumber(w).ToUint64() * 0x9E37 + salt);
                          rng.Next();
                          return rng.Next() % 3 == 0;
                        }};
}

TEST(DensityProperty, MonotoneAndBoundedByX) {
  for (std::uint64_t salt = 1; salt <= 5; ++salt) {
    const DensityTable t = BuildDensityTable(RandomOracle(salt), 3000);
    for (std::uint64_t x = 1; x <= 3000; ++x) {
      ASSERT_LE(t.at(x - 1), t.at(x));
      ASSERT_LE(t.at(x), x);
    }
  }
}

TEST(DensityProperty, IntersectionNeverIncreases) {
  for (std::uint64_t salt = 1; salt <= 5; ++salt) {
    const LanguageOracle a = RandomOracle(salt);
    const LanguageOracle b = RandomOracle(salt + 100);
    const DensityTable ta = BuildDensityTable(a, 3000);
    const DensityTable tab = BuildDensityTable(Intersect(a, b), 3000);
    for (std::uint64_t x = 1; x <= 3000; ++x) ASSERT_LE(tab.at(x), ta.at(x));
  }
}

TEST(OracleByNameTest, Lookup) {
  EXPECT_EQ(OracleByName("sq").name, "sq");
  EXPECT_EQ(OracleByName("square").name, "sq");
  EXPECT_EQ(OracleByName("cube").beta, 3.0);
  EXPECT_EQ(OracleByName("power5").beta, 5.0);
  EXPECT_EQ(OracleByName("full").name, "full");
  EXPECT_THROW(OracleByName("nope"), ParameterError);
  EXPECT_THROW(OracleByName("powerx"), ParameterError);
}

TEST(DensityCsvTest, Rows) {
  std::ostringstream out;
  const LanguageOracle sq = SquareOracle();
  WriteDensityCsv(out, sq, BuildDensityTable(sq, 3));
  EXPECT_EQ(out.str(),
            "x,dens,lower_bound,upper_bound\n"
            "1,0,0.3,1\n"
            "2,0,0.424264069,1.41421356\n"
            "3,1,0.519615242,1.73205081\n");
}

}  // namespace
}  // namespace owflab
