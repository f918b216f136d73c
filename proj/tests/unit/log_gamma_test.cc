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

#include "owflab/log_gamma.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace owflab {
namespace {

// Compensated direct sum, used as the reference for both branches.
long double DirectSum(long double n, std::uint64_t m) {
  long double sum = 0;
  long double comp = 0;
  for (std::uint64_t j = 0; j < m; ++j) {
    const long double y = std::log1p(-static_cast<long double>(j) / n) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

TEST(LogFallingRatioTest, SmallCases) {
  EXPECT_EQ(LogFallingRatio(5, 0), 0.0L);
  EXPECT_EQ(LogFallingRatio(5, 1), 0.0L);
  // 4!/(2! 4^2) = 12/16.
  EXPECT_NEAR(static_cast<double>(LogFallingRatio(4, 2)), std::log(0.75), 1e-15);
}

TEST(LogFallingRatioTest, MatchesDirectSumAcrossBranches) {
  for (long double n : {1e3L, 1e5L, 1e6L, 3e6L}) {
    for (std::uint64_t m : {10ull, 1000ull, 65536ull, 65537ull, 200000ull,
                            1000000ull}) {
      if (m > n) continue;
      const long double want = DirectSum(n, m);
      const long double got = LogFallingRatio(n, static_cast<long double>(m));
      EXPECT_LE(std::fabs(got - want), 1e-12L * std::fabs(want) + 1e-15L)
          << n << " " << m;
    }
  }
}

TEST(LogFallingRatioTest, MatchesLgamma) {
  for (long double n : {20.0L, 500.0L, 1e5L}) {
    for (long double m : {3.0L, 10.0L, 19.0L}) {
      const long double want =
          std::lgamma(n + 1) - std::lgamma(n - m + 1) - m * std::log(n);
      EXPECT_NEAR(static_cast<double>(LogFallingRatio(n, m)),
                  static_cast<double>(want), 1e-9);
    }
  }
}

TEST(LogGammaShiftTest, FrozenHighPrecisionValues) {
  // Reference values from 40-digit arbitrary-precision log-gamma.
  struct Case {
    long double x, eps, want;
  } cases[] = {
      {10, 1e-6L, 2.351752541483551758498683e-6L},
      {100, 1e-5L, 4.610161802987252433447336e-5L},
      {3, 1e-9L, 1.256117668289888994844924e-9L},
      {4, 0.5L, 0.7243172595055033991427991L},
      {1000, 0.25L, 1.727032561930105797021662L},
  };
  for (const Case& c : cases) {
    const long double got = LogGammaShift(c.x, c.eps);
    EXPECT_LE(std::fabs(got - c.want), 1e-13L * c.want) << c.x << " " << c.eps;
  }
}

TEST(LogGammaShiftTest, SeriesAndLgammaAgreeNearCrossover) {
  for (long double x : {2.0L, 7.0L, 50.0L}) {
    const long double below = LogGammaShift(x, 0.99e-4L);
    const long double above = LogGammaShift(x, 1.01e-4L);
    EXPECT_GT(above, below);
    EXPECT_NEAR(static_cast<double>(above / below), 1.01 / 0.99, 1e-5);
  }
}

TEST(PolygammaTest, KnownValues) {
  EXPECT_NEAR(static_cast<double>(Digamma(1)), -std::numbers::egamma, 1e-15);
  EXPECT_NEAR(static_cast<double>(Trigamma(1)), std::numbers::pi * std::numbers::pi / 6,
              1e-15);
  EXPECT_NEAR(static_cast<double>(Digamma(7.5L)), 1.946757484246086788, 1e-15);
  EXPECT_NEAR(static_cast<double>(Trigamma(7.5L)), 0.1426158966967037998, 1e-15);
}

}  // namespace
}  // namespace owflab
