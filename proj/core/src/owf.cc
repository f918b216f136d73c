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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

namespace owflab {
namespace {

// a^e, or nullopt past 64 bits.
std::optional<std::uint64_t> CheckedPow(std::uint64_t a, unsigned e) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    acc *= a;
    if (acc > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

// a * b + c with overflow reported as UINT64_MAX.
std::uint64_t SatMulAdd(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  const unsigned __int128 v = static_cast<unsigned __int128>(a) * b + c;
  return v > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

std::uint64_t SelectionBits(std::uint64_t urn, KProfile profile) {
  return SatMulAdd(urn, BitsPerDraw(urn, profile), 0);
}

// n + n * budget, or nullopt when the parameters themselves are unusable.
std::optional<std::uint64_t> RequiredLength(std::uint64_t n,
                                            const OwfConfig& config) {
  try {
    const SamplerParams p = MakeSamplerParams(n, config.beta, config.d,
                                              config.alpha);
    return SatMulAdd(n, PtsampBudget(p, config.profile), n);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// i^(6 beta) + 2 i^(2 beta) + i, or nullopt past 64 bits.
std::optional<std::uint64_t> LengthCost(std::uint64_t i, unsigned beta) {
  const auto a = CheckedPow(i, 6 * beta);
  const auto b = CheckedPow(i, 2 * beta);
  if (!a || !b) return std::nullopt;
  const unsigned __int128 total = static_cast<unsigned __int128>(*a) +
                                  2 * static_cast<unsigned __int128>(*b) + i;
  if (total > UINT64_MAX) return std::nullopt;
  return static_cast<std::uint64_t>(total);
}

std::vector<std::uint64_t> Iota(std::uint64_t n) {
  std::vector<std::uint64_t> v(n);
  std::iota(v.begin(), v.end(), std::uint64_t{1});
  return v;
}

}  // namespace

Word OwfOutput::Encode() const {
  const std::size_t width = std::bit_width(params.urn);
  Word out;
  for (const auto& s : sets) {
    for (std::uint64_t v : s.members) {
      for (std::size_t i = width; i-- > 0;) out.PushBack((v >> i) & 1);
    }
  }
  return out;
}

std::uint64_t ComputeN(std::uint64_t ell, unsigned beta) {
  if (beta < 1) throw DomainError("ComputeN: beta must be >= 1");
  std::uint64_t n = 0;
  for (std::uint64_t i = 1;; ++i) {
    const auto c = LengthCost(i, beta);
    if (!c || *c > ell) break;
    n = i;
  }
  if (n == 0) {
    throw DomainError("ComputeN: ell = " + std::to_string(ell) +
                      " is below the minimum for beta = " +
                      std::to_string(beta));
  }
  return n;
}

std::uint64_t PtsampBudget(const SamplerParams& params, KProfile profile) {
  const std::uint64_t thin = SelectionBits(params.urn, profile);
  const std::uint64_t pick = SelectionBits(params.n, profile);
  return thin > UINT64_MAX - pick ? UINT64_MAX : thin + pick;
}

PtsampResult PTSamp(bool b, const SamplerParams& params, BitTape& tape,
                    KProfile profile) {
  const std::uint64_t urn_size = b ? params.n : params.urn;
  if (params.m > urn_size) {
    throw ParameterError("PTSamp: m = " + std::to_string(params.m) +
                         " exceeds the " + (b ? "thinned" : "full") +
                         " urn of size " + std::to_string(urn_size) +
                         " (n = " + std::to_string(params.n) +
                         ", beta = " + std::to_string(params.beta) + ")");
  }
  const std::uint64_t k_big = BitsPerDraw(params.urn, profile);
  const std::uint64_t need =
      b ? PtsampBudget(params, profile) : SelectionBits(params.urn, profile);
  tape.Require(need);

  const std::uint64_t start = tape.cursor();
  PtsampResult result;
  result.urn = Iota(params.urn);
  std::uint64_t k = k_big;
  if (b) {
    result.urn = SelectSubset(tape, params.n, result.urn, k_big).chosen;
    k = BitsPerDraw(params.n, profile);
  }
  result.set.members = SelectSubset(tape, params.m, result.urn, k).chosen;
  result.set.urn_bound = params.urn;
  result.consumed = tape.cursor() - start;
  return result;
}

InfeasibleLength::InfeasibleLength(std::uint64_t n, std::uint64_t feasible_n,
                                   std::uint64_t needed,
                                   std::uint64_t available)
    : ParameterError("input too short for n = " + std::to_string(n) +
                     " rounds: need " + std::to_string(needed) +
                     " bits, have " + std::to_string(available) +
                     "; largest feasible n is " + std::to_string(feasible_n)),
      n_(n),
      feasible_n_(feasible_n) {}

std::uint64_t MinimumFeasibleLength(std::uint64_t n, const OwfConfig& config) {
  const auto req = RequiredLength(n, config);
  const auto lo = LengthCost(n, config.beta);
  if (!req || !lo) throw DomainError("MinimumFeasibleLength: unusable n");
  const std::uint64_t ell = std::max(*req, *lo);
  const auto next = LengthCost(n + 1, config.beta);
  if (next && ell >= *next) {
    throw DomainError("MinimumFeasibleLength: no length yields n = " +
                      std::to_string(n) + " with enough tape");
  }
  return ell;
}

OwfOutput OwfEvaluate(const Word& w, const OwfConfig& config) {
  const std::uint64_t ell = w.size();
  const std::uint64_t n = ComputeN(ell, config.beta);
  OwfOutput out;
  out.n = n;
  out.params = MakeSamplerParams(n, config.beta, config.d, config.alpha);
  const std::uint64_t budget = PtsampBudget(out.params, config.profile);
  const std::uint64_t needed = SatMulAdd(n, budget, 0);
  if (ell - n < needed) {
    std::uint64_t feasible = 0;
    for (std::uint64_t i = n - 1; i >= 1; --i) {
      const auto req = RequiredLength(i, config);
      if (req && *req <= ell) {
        feasible = i;
        break;
      }
    }
    throw InfeasibleLength(n, feasible, needed, ell - n);
  }

  BitTape tape = BitTape::FromWord(w.Slice(n, ell - n));
  for (std::uint64_t i = 0; i < n; ++i) {
    PtsampResult r = PTSamp(w[i] == 1, out.params, tape, config.profile);
    out.sets.push_back(std::move(r.set));
    out.round_consumed.push_back(r.consumed);
    out.bits_consumed += r.consumed;
  }
  return out;
}

bool HitTest(const InstanceSet& w, const LanguageOracle& lang) {
  for (std::uint64_t g : w.members) {
    if (lang.member(GoedelInverse(g))) return true;
  }
  return false;
}

bool BranchStats::concordant() const {
  const double diff = std::fabs(frequency() - exact_hit);
  if (sigma == 0) return diff == 0;
  return diff <= 4 * sigma;
}

BijectivityReport SamplingErrorExperiment(const ExperimentConfig& config,
                                          const LanguageOracle& lang) {
  if (config.trials < 1000) {
    throw DomainError("SamplingErrorExperiment: need at least 1000 trials");
  }
  BijectivityReport rep;
  rep.params = MakeSamplerParams(config.n, config.beta, lang.d, config.alpha);
  rep.oracle = lang.name;
  rep.profile = config.profile;
  rep.seed = config.seed;
  rep.trials = config.trials;
  const SamplerParams& p = rep.params;
  const std::uint64_t stride = PtsampBudget(p, config.profile);

  std::vector<std::uint8_t> in_lang(p.urn + 1, 0);
  for (std::uint64_t g = 1; g <= p.urn; ++g) {
    in_lang[g] = lang.member(GoedelInverse(g)) ? 1 : 0;
    rep.urn_good += in_lang[g];
  }
  auto meets = [&](const std::vector<std::uint64_t>& s) {
    return std::any_of(s.begin(), s.end(),
                       [&](std::uint64_t g) { return in_lang[g] != 0; });
  };

  struct Shard {
    std::uint64_t hits0 = 0, hits1 = 0, bits = 0;
    std::vector<std::uint64_t> hist;
  };
  const unsigned threads = std::max(1u, std::min(config.threads, 64u));
  std::vector<Shard> shards(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        Shard& sh = shards[t];
        sh.hist.assign(p.n + 1, 0);
        for (std::uint64_t trial = t; trial < config.trials; trial += threads) {
          for (int b = 0; b < 2; ++b) {
            BitTape tape = BitTape::FromSeed(config.seed, stride,
                                             (2 * trial + b) * stride);
            const PtsampResult r = PTSamp(b == 1, p, tape, config.profile);
            sh.bits += r.consumed;
            const bool hit = meets(r.set.members);
            if (b == 0) {
              sh.hits0 += hit;
            } else {
              sh.hits1 += hit;
              std::uint64_t g = 0;
              for (std::uint64_t u : r.urn) g += in_lang[u];
              ++sh.hist[g];
            }
          }
        }
      });
    }
  }

  rep.thinned_good_histogram.assign(p.n + 1, 0);
  for (const Shard& sh : shards) {
    rep.b0.hits += sh.hits0;
    rep.b1.hits += sh.hits1;
    rep.bits_consumed += sh.bits;
    for (std::size_t g = 0; g < sh.hist.size(); ++g) {
      rep.thinned_good_histogram[g] += sh.hist[g];
    }
  }
  const double trials = static_cast<double>(config.trials);
  rep.b0.trials = rep.b1.trials = config.trials;

  const double p0 = HitProbability(p.urn, rep.urn_good, p.m).get_d();
  rep.b0.exact_hit = p0;
  rep.b0.sigma = std::sqrt(p0 * (1 - p0) / trials);

  // Each b = 1 trial has its own urn; the hit count is a sum of
  // independent Bernoullis with per-trial exact means.
  mpq_class mean = 0;
  double var = 0;
  for (std::uint64_t g = 0; g <= p.n; ++g) {
    const std::uint64_t count = rep.thinned_good_histogram[g];
    if (count == 0) continue;
    const mpq_class pt = HitProbability(p.n, g, p.m);
    mean += pt * static_cast<unsigned long>(count);
    const double pd = pt.get_d();
    var += static_cast<double>(count) * pd * (1 - pd);
  }
  rep.b1.exact_hit =
      mpq_class(mean / static_cast<unsigned long>(config.trials)).get_d();
  rep.b1.sigma = std::sqrt(var) / trials;

  rep.miss0 = rep.b0.frequency();
  rep.miss1 = 1 - rep.b1.frequency();
  rep.exact0 = rep.b0.exact_hit;
  rep.exact1 = 1 - rep.b1.exact_hit;
  rep.criterion_value = rep.miss0 + rep.miss1;
  rep.e_ell_frequency = 1 - rep.criterion_value / 2;
  rep.bijectivity_criterion = rep.criterion_value < 1;
  rep.orientation =
      rep.b1.frequency() > rep.b0.frequency() ? "mapping1" : "mapping2";
  rep.reference_factor = std::pow(1 - std::pow(2.0, -static_cast<double>(p.urn)),
                                  static_cast<double>(p.urn));
  return rep;
}

InversionResult BinarySearchInvert(
    std::uint64_t y,
    const std::function<bool(std::uint64_t, std::uint64_t)>& decider,
    std::uint64_t n_bound,
    const std::function<std::uint64_t(std::uint64_t)>& g, bool check_zero) {
  InversionResult res;
  auto ask = [&](std::uint64_t bound) {
    ++res.queries;
    return decider(y, bound);
  };
  if (n_bound == 0 || !ask(n_bound)) return res;
  if (check_zero && ask(0)) {
    throw ContractViolation(
        "BinarySearchInvert: decider claims a preimage below 1");
  }
  // Invariant: the answer at lo is false (lo = 0 by definition), at hi true.
  std::uint64_t lo = 0;
  std::uint64_t hi = n_bound;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (ask(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (g && g(hi) != y) {
    throw ContractViolation("BinarySearchInvert: decider is not monotone for y = " +
                            std::to_string(y));
  }
  res.x = hi;
  return res;
}

}  // namespace owflab
