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

#ifndef OWFLAB_OWF_H_
#define OWFLAB_OWF_H_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "owflab/bitsampler.h"
#include "owflab/errors.h"
#include "owflab/languages.h"
#include "owflab/threshold.h"
#include "owflab/words.h"

namespace owflab {

// A set of Gödel indices drawn from {1..urn_bound}. It never records
// whether it meets the language.
struct InstanceSet {
  std::vector<std::uint64_t> members;  // sorted, distinct
  std::uint64_t urn_bound = 0;

  friend bool operator==(const InstanceSet&, const InstanceSet&) = default;
};

struct OwfOutput {
  std::vector<InstanceSet> sets;
  std::uint64_t n = 0;
  std::uint64_t bits_consumed = 0;
  std::vector<std::uint64_t> round_consumed;
  SamplerParams params;

  // Every member in bitlength(N) bits, sets in order. The length depends
  // only on (n, m, N).
  Word Encode() const;
};

// max{i : i^(6 beta) + 2 i^(2 beta) + i <= ell}. Throws DomainError when
// not even i = 1 fits.
std::uint64_t ComputeN(std::uint64_t ell, unsigned beta);

// Bits one PTSamp call may consume in the worst (b = 1) case:
// N k(N) + n k(n).
std::uint64_t PtsampBudget(const SamplerParams& params, KProfile profile);

struct PtsampResult {
  InstanceSet set;
  std::vector<std::uint64_t> urn;  // the urn W was drawn from
  std::uint64_t consumed = 0;
};

// b = 1 thins {1..N} to n elements and draws m of those; b = 0 draws m from
// {1..N} directly. The full branch requirement is checked before anything
// is read. Throws ParameterError if m exceeds the urn.
PtsampResult PTSamp(bool b, const SamplerParams& params, BitTape& tape,
                    KProfile profile);

// The input is too short to fund n rounds at the chosen k profile.
class InfeasibleLength : public ParameterError {
 public:
  InfeasibleLength(std::uint64_t n, std::uint64_t feasible_n,
                   std::uint64_t needed, std::uint64_t available);
  std::uint64_t n() const { return n_; }
  // Largest n' <= n whose rounds would fit; 0 if none.
  std::uint64_t feasible_n() const { return feasible_n_; }

 private:
  std::uint64_t n_;
  std::uint64_t feasible_n_;
};

struct OwfConfig {
  unsigned beta = 2;
  KProfile profile = KProfile::kPaper;
  std::optional<mpq_class> alpha;
  double d = 1.0;  // only enters p_lower
};

// f_ell(w): the first n bits pick the branches, the rest is the tape.
OwfOutput OwfEvaluate(const Word& w, const OwfConfig& config);

// Smallest ell at which ComputeN gives n and OwfEvaluate has enough tape.
// Throws DomainError if the tape need overshoots into the range of n + 1.
std::uint64_t MinimumFeasibleLength(std::uint64_t n, const OwfConfig& config);

bool HitTest(const InstanceSet& w, const LanguageOracle& lang);

struct BranchStats {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;  // W meets L
  double exact_hit = 0;    // exact Pr(W meets L) from the measured urns
  double sigma = 0;        // standard error of the hit frequency
  double frequency() const {
    return trials ? static_cast<double>(hits) / trials : 0.0;
  }
  // Within 4 sigma, or exactly equal when sigma vanishes.
  bool concordant() const;
};

struct BijectivityReport {
  SamplerParams params;
  std::string oracle;
  KProfile profile = KProfile::kPaper;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t urn_good = 0;  // members of L among {1..N}
  // Thinned-urn good counts: histogram[g] trials had g members.
  std::vector<std::uint64_t> thinned_good_histogram;
  BranchStats b0;
  BranchStats b1;
  double miss0 = 0;  // Pr(W meets L | b = 0), empirical
  double miss1 = 0;  // Pr(W misses L | b = 1), empirical
  double exact0 = 0;
  double exact1 = 0;
  double criterion_value = 0;   // miss0 + miss1
  double e_ell_frequency = 0;   // 1 - criterion_value / 2
  bool bijectivity_criterion = false;  // criterion_value < 1
  std::string orientation;      // which branch lands on the hitting class
  double reference_factor = 0;  // (1 - 2^-N)^N
  std::uint64_t bits_consumed = 0;
};

struct ExperimentConfig {
  std::uint64_t n = 2;
  unsigned beta = 2;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 1;
  KProfile profile = KProfile::kPaper;
  std::optional<mpq_class> alpha;
  unsigned threads = 1;
};

// Trial t, branch b reads the seeded stream at offset (2t + b) * budget,
// so counts do not depend on scheduling. Throws DomainError for fewer than
// 1000 trials.
BijectivityReport SamplingErrorExperiment(const ExperimentConfig& config,
                                          const LanguageOracle& lang);

struct InversionResult {
  std::optional<std::uint64_t> x;
  std::uint64_t queries = 0;
};

// decider(y, bound) answers "some x <= bound has g(x) = y". One query at
// n_bound, then bisection for the least true bound, which is the
// preimage. If `g` is given the answer is checked against it and a
// mismatch raises ContractViolation; so does a decider claiming a
// preimage at bound 0 when `check_zero` is set (one extra query).
InversionResult BinarySearchInvert(
    std::uint64_t y,
    const std::function<bool(std::uint64_t, std::uint64_t)>& decider,
    std::uint64_t n_bound,
    const std::function<std::uint64_t(std::uint64_t)>& g = nullptr,
    bool check_zero = false);

}  // namespace owflab

#endif  // OWFLAB_OWF_H_
