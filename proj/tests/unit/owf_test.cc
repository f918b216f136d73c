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

#include "owflab/owf.h"

#include <gtest/gtest.h>

#include <cmath>

#include "support/test_rng.h"

namespace owflab {
namespace {

std::vector<std::uint64_t> Iota(std::uint64_t n) {
  std::vector<std::uint64_t> v(n);
  for (std::uint64_t i = 0; i < n; ++i) v[i] = i + 1;
  return v;
}

TEST(ComputeNTest, Examples) {
  EXPECT_EQ(ComputeN(4, 1), 1u);
  EXPECT_EQ(ComputeN(73, 1), 1u);
  EXPECT_EQ(ComputeN(74, 1), 2u);
  EXPECT_EQ(ComputeN(4096 + 2 * 16 + 2, 2), 2u);
  EXPECT_EQ(ComputeN(4129, 2), 1u);
  EXPECT_THROW(ComputeN(3, 1), DomainError);
}

TEST(ComputeNProperty, MatchesDirectMaximization) {
  for (unsigned beta = 1; beta <= 3; ++beta) {
    for (std::uint64_t ell = 4; ell < 20'000; ell += 7) {
      std::uint64_t best = 0;
      for (std::uint64_t i = 1; i < 20; ++i) {
        const double cost = std::pow(i, 6.0 * beta) + 2 * std::pow(i, 2.0 * beta) + i;
        if (cost <= static_cast<double>(ell)) best = i;
      }
      if (best == 0) continue;
      ASSERT_EQ(ComputeN(ell, beta), best) << ell << " " << beta;
    }
  }
}

TEST(PtsampTest, FrozenTraces) {
  const SamplerParams p = MakeSamplerParams(2, 2, 0.3);
  ASSERT_EQ(p.m, 1u);
  EXPECT_EQ(PtsampBudget(p, KProfile::kPaper), 16u * 258 + 2 * 6);

  BitTape t0 = BitTape::FromSeed(42, 5000);
  const PtsampResult r0 = PTSamp(false, p, t0, KProfile::kPaper);
  EXPECT_EQ(r0.set.members, std::vector<std::uint64_t>{15});
  EXPECT_EQ(r0.set.urn_bound, 16u);
  EXPECT_EQ(r0.urn, Iota(16));
  EXPECT_EQ(r0.consumed, 4128u);

  BitTape t1 = BitTape::FromSeed(42, 5000);
  const PtsampResult r1 = PTSamp(true, p, t1, KProfile::kPaper);
  EXPECT_EQ(r1.set.members, std::vector<std::uint64_t>{15});
  EXPECT_EQ(r1.urn, (std::vector<std::uint64_t>{15, 16}));
  EXPECT_EQ(r1.consumed, 4140u);
  EXPECT_EQ(t1.cursor(), 4140u);
}

TEST(PtsampProperty, ComposesFromSelections) {
  testing::TestRng rng(3);
  for (std::uint64_t n : {2, 3}) {
    const SamplerParams p = MakeSamplerParams(n, 2, 0.3);
    for (KProfile profile : {KProfile::kPaper, KProfile::kPractical}) {
      const std::uint64_t kn = BitsPerDraw(p.urn, profile);
      const std::uint64_t ks = BitsPerDraw(n, profile);
      for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t seed = rng.Next();
        const std::uint64_t len = PtsampBudget(p, profile);
        BitTape a = BitTape::FromSeed(seed, len);
        BitTape b = BitTape::FromSeed(seed, len);
        const PtsampResult r0 = PTSamp(false, p, a, profile);
        ASSERT_EQ(r0.set.members, SelectSubset(b, p.m, Iota(p.urn), kn).chosen);

        BitTape c = BitTape::FromSeed(seed, len);
        BitTape d = BitTape::FromSeed(seed, len);
        const PtsampResult r1 = PTSamp(true, p, c, profile);
        const auto thinned = SelectSubset(d, n, Iota(p.urn), kn).chosen;
        ASSERT_EQ(r1.urn, thinned);
        ASSERT_EQ(r1.set.members, SelectSubset(d, p.m, thinned, ks).chosen);
        ASSERT_EQ(r1.set.members.size(), r0.set.members.size());
        ASSERT_EQ(c.cursor(), d.cursor());
      }
    }
  }
}

TEST(PtsampTest, ChecksBudgetUpFront) {
  const SamplerParams p = MakeSamplerParams(2, 2, 0.3);
  BitTape t = BitTape::FromSeed(1, 4139);
  EXPECT_THROW(PTSamp(true, p, t, KProfile::kPaper), TapeExhausted);
  EXPECT_EQ(t.cursor(), 0u);
}

TEST(PtsampTest, DrawCountAboveThinnedUrn) {
  SamplerParams p = MakeSamplerParams(2, 2, 0.3);
  p.m = 3;  // more than the n = 2 survivors
  BitTape t = BitTape::FromSeed(1, 10'000);
  EXPECT_THROW(PTSamp(true, p, t, KProfile::kPaper), ParameterError);
  BitTape u = BitTape::FromSeed(1, 10'000);
  EXPECT_EQ(PTSamp(false, p, u, KProfile::kPaper).set.members.size(), 3u);
}

TEST(OwfEvaluateTest, SmallestLengthAtBetaOne) {
  OwfConfig cfg;
  cfg.beta = 1;
  EXPECT_EQ(MinimumFeasibleLength(1, cfg), 7u);
  const Word w = Word::FromString("0110001");
  const OwfOutput out = OwfEvaluate(w, cfg);
  EXPECT_EQ(out.n, 1u);
  ASSERT_EQ(out.sets.size(), 1u);
  EXPECT_EQ(out.sets[0].members, std::vector<std::uint64_t>{1});
  EXPECT_EQ(out.sets[0].urn_bound, 1u);
  EXPECT_EQ(out.bits_consumed, 3u);
  EXPECT_EQ(out.Encode().ToString(), "1");
}

TEST(OwfEvaluateTest, FrozenVectorForTwoRounds) {
  OwfConfig cfg;
  cfg.beta = 1;
  EXPECT_EQ(MinimumFeasibleLength(2, cfg), 170u);
  const Word w = BitTape::FromSeed(7, 170).PeekWord(170);
  const OwfOutput out = OwfEvaluate(w, cfg);
  EXPECT_EQ(out.n, 2u);
  EXPECT_EQ(out.params.urn, 4u);
  EXPECT_EQ(out.params.m, 1u);
  ASSERT_EQ(out.sets.size(), 2u);
  EXPECT_EQ(out.sets[0].members, std::vector<std::uint64_t>{2});
  EXPECT_EQ(out.sets[1].members, std::vector<std::uint64_t>{1});
  EXPECT_EQ(out.round_consumed, (std::vector<std::uint64_t>{72, 84}));
  EXPECT_EQ(out.bits_consumed, 156u);
  EXPECT_EQ(out.Encode().ToString(), "010001");
}

TEST(OwfEvaluateTest, InfeasibleLengthReportsFallback) {
  OwfConfig cfg;
  cfg.beta = 1;
  try {
    OwfEvaluate(Word::Zeros(169), cfg);
    FAIL() << "expected InfeasibleLength";
  } catch (const InfeasibleLength& e) {
    EXPECT_EQ(e.n(), 2u);
    EXPECT_EQ(e.feasible_n(), 1u);
  }
}

TEST(OwfEvaluateTest, MinimumLengthAtBetaTwo) {
  OwfConfig cfg;
  EXPECT_EQ(MinimumFeasibleLength(2, cfg), 8282u);
  const OwfOutput out = OwfEvaluate(Word::Zeros(8282), cfg);
  EXPECT_EQ(out.n, 2u);
  EXPECT_THROW(OwfEvaluate(Word::Zeros(8281), cfg), InfeasibleLength);
}

TEST(OwfEvaluateProperty, ShapeAndAccounting) {
  OwfConfig cfg;
  cfg.beta = 1;
  testing::TestRng rng(170);
  std::size_t encoded = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Word w = rng.RandomWord(170);
    const OwfOutput out = OwfEvaluate(w, cfg);
    ASSERT_EQ(out.n, 2u);
    std::uint64_t sum = 0;
    for (std::uint64_t c : out.round_consumed) sum += c;
    ASSERT_EQ(sum, out.bits_consumed);
    for (const InstanceSet& s : out.sets) {
      ASSERT_EQ(s.members.size(), out.params.m);
      ASSERT_EQ(s.urn_bound, out.params.urn);
    }
    if (trial == 0) encoded = out.Encode().size();
    ASSERT_EQ(out.Encode().size(), encoded);

    // Flipping a tape bit may move members but never the shape.
    std::vector<std::uint8_t> bits(w.bits().begin(), w.bits().end());
    bits[rng.Between(out.n, bits.size() - 1)] ^= 1;
    const OwfOutput flipped = OwfEvaluate(Word(std::move(bits)), cfg);
    ASSERT_EQ(flipped.n, out.n);
    ASSERT_EQ(flipped.params.m, out.params.m);
    ASSERT_EQ(flipped.params.urn, out.params.urn);
    ASSERT_EQ(OwfEvaluate(w, cfg).sets, out.sets);
  }
}

TEST(HitTestTest, Examples) {
  const LanguageOracle sq = SquareOracle();
  EXPECT_TRUE(HitTest(InstanceSet{{3}, 16}, sq));
  EXPECT_FALSE(HitTest(InstanceSet{{2}, 16}, sq));
  EXPECT_FALSE(HitTest(InstanceSet{{}, 16}, sq));
  EXPECT_TRUE(HitTest(InstanceSet{{5, 12}, 16}, sq));
}

TEST(ExperimentTest, SmallestSquareUrn) {
  ExperimentConfig cfg;
  cfg.n = 2;
  cfg.trials = 1000;
  cfg.seed = 5;
  const BijectivityReport r = SamplingErrorExperiment(cfg, SquareOracle());
  EXPECT_EQ(r.params.urn, 16u);
  EXPECT_EQ(r.urn_good, 2u);
  EXPECT_DOUBLE_EQ(r.exact0, 0.125);
  EXPECT_EQ(r.b0.trials, 1000u);
  EXPECT_EQ(r.b1.trials, 1000u);
  EXPECT_TRUE(r.b0.concordant());
  EXPECT_TRUE(r.b1.concordant());
  std::uint64_t hist = 0;
  for (std::uint64_t h : r.thinned_good_histogram) hist += h;
  EXPECT_EQ(hist, 1000u);
  EXPECT_DOUBLE_EQ(r.miss0, r.b0.frequency());
  EXPECT_DOUBLE_EQ(r.miss1, 1 - r.b1.frequency());
  EXPECT_DOUBLE_EQ(r.criterion_value, r.miss0 + r.miss1);
  EXPECT_DOUBLE_EQ(r.e_ell_frequency, 1 - r.criterion_value / 2);
  EXPECT_EQ(r.bijectivity_criterion, r.criterion_value < 1);
  EXPECT_EQ(r.bits_consumed, 2 * 1000 * PtsampBudget(r.params, KProfile::kPaper) -
                                 1000 * 12);
}

TEST(ExperimentTest, ThreadCountDoesNotMatter) {
  ExperimentConfig cfg;
  cfg.n = 3;
  cfg.trials = 1000;
  cfg.seed = 9;
  const BijectivityReport a = SamplingErrorExperiment(cfg, SquareOracle());
  cfg.threads = 3;
  const BijectivityReport b = SamplingErrorExperiment(cfg, SquareOracle());
  EXPECT_EQ(a.b0.hits, b.b0.hits);
  EXPECT_EQ(a.b1.hits, b.b1.hits);
  EXPECT_EQ(a.thinned_good_histogram, b.thinned_good_histogram);
  EXPECT_EQ(a.bits_consumed, b.bits_consumed);
}

TEST(ExperimentTest, TooFewTrials) {
  ExperimentConfig cfg;
  cfg.trials = 999;
  EXPECT_THROW(SamplingErrorExperiment(cfg, SquareOracle()), DomainError);
}

TEST(ExperimentProperty, EventFrequencyTrend) {
  // Nondecreasing in n up to sampling noise.
  double prev = 0;
  double prev_sigma = 0;
  for (std::uint64_t n : {2, 3, 4}) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.trials = 4000;
    cfg.seed = 77;
    const BijectivityReport r = SamplingErrorExperiment(cfg, SquareOracle());
    const double sigma =
        0.5 * std::sqrt(r.b0.sigma * r.b0.sigma + r.b1.sigma * r.b1.sigma);
    if (n > 2) {
      EXPECT_GE(r.e_ell_frequency + 4 * std::hypot(sigma, prev_sigma), prev)
          << n;
    }
    prev = r.e_ell_frequency;
    prev_sigma = sigma;
  }
}

bool SquareDecider(std::uint64_t y, std::uint64_t bound) {
  const auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(y)));
  for (std::uint64_t x = r > 0 ? r - 1 : 0; x <= r + 1; ++x) {
    if (x * x == y) return x <= bound;
  }
  return false;
}

std::uint64_t Square(std::uint64_t x) { return x * x; }

TEST(InversionTest, Examples) {
  const InversionResult r = BinarySearchInvert(49, SquareDecider, 100, Square);
  ASSERT_TRUE(r.x.has_value());
  EXPECT_EQ(*r.x, 7u);
  EXPECT_LE(r.queries, 8u);

  const InversionResult none = BinarySearchInvert(50, SquareDecider, 100);
  EXPECT_FALSE(none.x.has_value());
  EXPECT_EQ(none.queries, 1u);

  auto identity = [](std::uint64_t y, std::uint64_t bound) { return y <= bound; };
  const InversionResult id = BinarySearchInvert(
      1000, identity, 1000, [](std::uint64_t x) { return x; });
  EXPECT_EQ(id.x, std::optional<std::uint64_t>(1000));
}

TEST(InversionTest, ContractViolations) {
  auto always = [](std::uint64_t, std::uint64_t) { return true; };
  EXPECT_THROW(BinarySearchInvert(49, always, 100, nullptr, true),
               ContractViolation);
  // Without the checks the lie goes through and lands on bound 1.
  EXPECT_EQ(BinarySearchInvert(49, always, 100).x,
            std::optional<std::uint64_t>(1));
  EXPECT_THROW(BinarySearchInvert(49, always, 100, Square), ContractViolation);
}

TEST(InversionProperty, QueryBound) {
  testing::TestRng rng(10);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t bound = rng.Between(1, 1'000'000);
    const std::uint64_t x = rng.Between(1, bound);
    const InversionResult r =
        BinarySearchInvert(x * x, SquareDecider, bound, Square);
    ASSERT_EQ(r.x, std::optional<std::uint64_t>(x));
    ASSERT_LE(r.queries, CeilLog2(bound) + 1) << bound;
  }
}

}  // namespace
}  // namespace owflab
