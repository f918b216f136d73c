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

#include "cli/verify_suite.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "owflab/languages.h"
#include "owflab/owf.h"
#include "owflab/threshold.h"
#include "owflab/turing.h"
#include "owflab/words.h"

namespace owflab::cli {
namespace {

using nlohmann::json;

std::uint64_t ISqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

CriterionResult GoedelRoundTrip(const SuiteOptions&) {
  std::uint64_t words = 0, word_failures = 0;
  for (std::size_t len = 0; len <= 16; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const Word w = Word::FromInteger(mpz_class(static_cast<unsigned long>(v)),
                                       len);
      const GoedelIndex g = GoedelNumber(w);
      ++words;
      // (1w)_2 is 2^len + v.
      if (g.ToUint64() != (std::uint64_t{1} << len) + v ||
          !(GoedelInverse(g) == w)) {
        ++word_failures;
      }
    }
  }
  std::uint64_t index_failures = 0;
  constexpr std::uint64_t kMaxIndex = std::uint64_t{1} << 17;
  for (std::uint64_t i = 1; i <= kMaxIndex; ++i) {
    if (GoedelNumber(GoedelInverse(i)).ToUint64() != i) ++index_failures;
  }
  return {1, "", word_failures == 0 && index_failures == 0,
          json{{"words", words},
               {"word_failures", word_failures},
               {"indices", kMaxIndex},
               {"index_failures", index_failures}}};
}

CriterionResult DensityBounds(const SuiteOptions& opt) {
  constexpr std::uint64_t kDensLimit = 100'000;
  const DensityTable table =
      BuildDensityTable(SquareOracle(), kDensLimit, opt.threads);
  std::uint64_t dens_violations = 0;
  for (std::uint64_t x = 1; x <= kDensLimit; ++x) {
    if (table.at(x) > ISqrt(x)) ++dens_violations;
  }
  constexpr std::uint64_t kGnLimit = 1'000'000;
  std::uint64_t ratio_violations = 0, formula_mismatches = 0;
  for (std::uint64_t y = 1; y <= kGnLimit; ++y) {
    const std::uint64_t g =
        GoedelNumberOfInteger(mpz_class(static_cast<unsigned long>(y)))
            .ToUint64();
    if (g < y || g > 5 * y) ++ratio_violations;
    // A leading 1 in front of the minimal binary form of y.
    if (g != (std::uint64_t{1} << std::bit_width(y)) + y) ++formula_mismatches;
  }
  return {2, "",
          dens_violations == 0 && ratio_violations == 0 &&
              formula_mismatches == 0,
          json{{"dens_limit", kDensLimit},
               {"dens_violations", dens_violations},
               {"gn_limit", kGnLimit},
               {"ratio_violations", ratio_violations},
               {"formula_mismatches", formula_mismatches}}};
}

CriterionResult Sandwich(const SuiteOptions& opt) {
  const auto rows = SandwichSweep(4, 400, opt.threads);
  std::uint64_t violations = 0;
  json first = nullptr;
  for (const auto& r : rows) {
    if (r.sandwiched) continue;
    if (violations++ == 0) {
      first = json{{"N", r.n}, {"good", r.good}, {"mstar", r.mstar}};
    }
  }
  return {3, "", violations == 0,
          json{{"pairs", rows.size()},
               {"violations", violations},
               {"first_violation", first}}};
}

CriterionResult Bollobas(const SuiteOptions& opt) {
  const GridSummary g = BollobasGrid(10, 200, {1, 2, 4}, opt.threads);
  return {4, "", g.violations == 0,
          json{{"checks", g.checks}, {"violations", g.violations}}};
}

CriterionResult SingleDrawBias(const SuiteOptions& opt) {
  std::uint64_t pairs = 0, violations = 0;
  if (opt.profile == KProfile::kPaper) {
    for (std::uint64_t k = 2; k <= 20; ++k) {
      for (std::uint64_t r = 2; r <= 64; ++r) {
        ++pairs;
        if (!EnumerateBias(k, r).ok()) ++violations;
      }
    }
  } else {
    for (std::uint64_t r = 2; r <= 64; ++r) {
      ++pairs;
      if (!ClosedFormBias(BitsPerDraw(r, opt.profile), r).ok()) ++violations;
    }
  }
  return {5, "", violations == 0,
          json{{"profile", KProfileName(opt.profile)},
               {"pairs", pairs},
               {"violations", violations}}};
}

CriterionResult PermutationBound(const SuiteOptions& opt) {
  std::uint64_t sequences = 0, violations = 0;
  json per_n = json::array();
  for (std::uint64_t n = 2; n <= 5; ++n) {
    const std::uint64_t k = BitsPerDraw(n, opt.profile);
    const PermutationDistribution d = ComputePermutationDistribution(n, k);
    const mpq_class& bound =
        opt.profile == KProfile::kPaper ? d.paper_bound : d.step_bound;
    std::uint64_t below = 0;
    for (const auto& s : d.sequences) {
      ++sequences;
      if (s.probability < bound) ++below;
    }
    if (d.total != 1) ++below;
    violations += below;
    per_n.push_back(json{{"N", n},
                         {"k", k},
                         {"min", d.min_probability.get_str()},
                         {"bound", bound.get_str()},
                         {"violations", below}});
  }
  return {6, "", violations == 0,
          json{{"profile", KProfileName(opt.profile)},
               {"sequences", sequences},
               {"violations", violations},
               {"per_N", per_n}}};
}

CriterionResult SamplerConcordance(const SuiteOptions& opt) {
  bool pass = true;
  json configs = json::array();
  for (std::uint64_t n : {2, 3, 4}) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.beta = 2;
    cfg.trials = 10'000;
    cfg.seed = opt.seed;
    cfg.profile = opt.profile;
    cfg.threads = opt.threads;
    const BijectivityReport r = SamplingErrorExperiment(cfg, SquareOracle());
    const bool ok = r.b0.concordant() && r.b1.concordant();
    pass = pass && ok;
    configs.push_back(json{{"n", n},
                           {"beta", 2},
                           {"N", r.params.urn},
                           {"m", r.params.m},
                           {"b0_hits", r.b0.hits},
                           {"b0_exact", r.b0.exact_hit},
                           {"b0_sigma", r.b0.sigma},
                           {"b1_hits", r.b1.hits},
                           {"b1_exact", r.b1.exact_hit},
                           {"b1_sigma", r.b1.sigma},
                           {"pass", ok}});
  }
  return {7, "", pass, json{{"trials", 10'000}, {"configs", configs}}};
}

CriterionResult ShapeSecrecy(const SuiteOptions& opt) {
  OwfConfig cfg;
  cfg.beta = 2;
  cfg.profile = opt.profile;
  const std::uint64_t ell = MinimumFeasibleLength(2, cfg);
  constexpr std::uint64_t kEvals = 10'000;
  std::uint64_t exceptions = 0, mismatches = 0;
  std::uint64_t n0 = 0, m0 = 0, urn0 = 0, enc0 = 0;
  bool have_shape = false;
  std::uint64_t patterns_seen = 0;
  for (std::uint64_t t = 0; t < kEvals; ++t) {
    // Input t comes from its own slice of a stream derived from the seed;
    // the two branch bits cycle so every pattern appears.
    const BitTape src = BitTape::FromSeed(opt.seed ^ 0x5ec7e7ULL, ell, t * ell);
    const Word raw = src.PeekWord(ell);
    std::vector<std::uint8_t> bits(raw.bits().begin(), raw.bits().end());
    bits[0] = t & 1;
    bits[1] = (t >> 1) & 1;
    patterns_seen |= std::uint64_t{1} << (t & 3);
    try {
      const OwfOutput out = OwfEvaluate(Word(std::move(bits)), cfg);
      if (!have_shape) {
        n0 = out.n;
        m0 = out.params.m;
        urn0 = out.params.urn;
        enc0 = out.Encode().size();
        have_shape = true;
      }
      bool same = out.n == n0 && out.sets.size() == n0 &&
                  out.Encode().size() == enc0;
      for (const auto& s : out.sets) {
        same = same && s.members.size() == m0 && s.urn_bound == urn0;
      }
      if (!same) ++mismatches;
    } catch (const std::exception&) {
      ++exceptions;
    }
  }
  return {8, "", exceptions == 0 && mismatches == 0,
          json{{"ell", ell},
               {"beta", 2},
               {"evaluations", kEvals},
               {"n", n0},
               {"m", m0},
               {"N", urn0},
               {"encoding_bits", enc0},
               {"bit_patterns", std::popcount(patterns_seen)},
               {"mismatches", mismatches},
               {"exceptions", exceptions}}};
}

CriterionResult Census(const SuiteOptions& opt) {
  bool pass = true;
  json rows = json::array();
  for (const auto& f : kFrozenCensus) {
    const CensusRow r = DiagonalCensus(f.length, DefaultTimeBounds(), opt.threads);
    pass = pass && r.members == f.members;
    rows.push_back(json{{"length", f.length},
                        {"members", r.members},
                        {"frozen", f.members}});
  }
  return {9, "", pass, json{{"rows", rows}}};
}

CriterionResult Inversion(const SuiteOptions& opt) {
  constexpr std::uint64_t kBound = 1'000'000'000'000ULL;
  constexpr std::uint64_t kTrials = 1000;
  const std::uint64_t limit = CeilLog2(kBound) + 1;
  auto decider = [](std::uint64_t y, std::uint64_t bound) {
    const std::uint64_t r = ISqrt(y);
    return r * r == y && r >= 1 && r <= bound;
  };
  auto square = [](std::uint64_t x) { return x * x; };
  std::uint64_t failures = 0, max_queries = 0;
  for (std::uint64_t t = 0; t < kTrials; ++t) {
    const std::uint64_t x = 1 + SeedStreamWord(opt.seed, t) % 1'000'000;
    const std::uint64_t y = x * x;
    try {
      const InversionResult r = BinarySearchInvert(y, decider, kBound, square);
      max_queries = std::max(max_queries, r.queries);
      if (!r.x || *r.x != x || r.queries > limit) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  return {10, "", failures == 0,
          json{{"trials", kTrials},
               {"query_limit", limit},
               {"max_queries", max_queries},
               {"failures", failures}}};
}

}  // namespace

std::string CriterionName(int id) {
  switch (id) {
    case 1: return "goedel_bijection";
    case 2: return "density_bounds";
    case 3: return "threshold_sandwich";
    case 4: return "bollobas_inequalities";
    case 5: return "single_draw_bias";
    case 6: return "permutation_lower_bound";
    case 7: return "sampler_vs_exact_hypergeometric";
    case 8: return "output_shape_secrecy";
    case 9: return "diagonal_census";
    case 10: return "inversion_demo";
    case 11: return "determinism";
    default: throw std::out_of_range("no criterion " + std::to_string(id));
  }
}

CriterionResult RunCriterion(int id, const SuiteOptions& options) {
  CriterionResult r;
  switch (id) {
    case 1: r = GoedelRoundTrip(options); break;
    case 2: r = DensityBounds(options); break;
    case 3: r = Sandwich(options); break;
    case 4: r = Bollobas(options); break;
    case 5: r = SingleDrawBias(options); break;
    case 6: r = PermutationBound(options); break;
    case 7: r = SamplerConcordance(options); break;
    case 8: r = ShapeSecrecy(options); break;
    case 9: r = Census(options); break;
    case 10: r = Inversion(options); break;
    default:
      throw std::out_of_range("criterion " + std::to_string(id) +
                              " does not run in process");
  }
  r.name = CriterionName(id);
  return r;
}

std::vector<CriterionResult> RunAllCriteria(const SuiteOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kInProcessCriteria; ++id) {
    out.push_back(RunCriterion(id, options));
  }
  return out;
}

nlohmann::json ResultsToJson(const std::vector<CriterionResult>& results) {
  json list = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    list.push_back(json{{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail}});
  }
  return json{{"criteria", list}, {"all_pass", all}};
}

}  // namespace owflab::cli
