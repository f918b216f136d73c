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

#ifndef OWFLAB_BITSAMPLER_H_
#define OWFLAB_BITSAMPLER_H_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "owflab/words.h"

namespace owflab {

// The fixed counter-mode expansion behind seeded tapes: 64-bit word j (j =
// 0, 1, ...) of the stream for `seed` is SplitMix64's finalizer applied to
// seed + (j + 1) * 0x9E3779B97F4A7C15, and bits are read most significant
// first within each word. Changing this breaks every frozen vector.
std::uint64_t SeedStreamWord(std::uint64_t seed, std::uint64_t j);

// Random-access bit storage shared by tapes.
class BitSource {
 public:
  virtual ~BitSource() = default;
  // 64 bits starting at absolute position `pos`, most significant first.
  // Positions past the end of a finite source read as zero.
  virtual std::uint64_t Word64At(std::uint64_t pos) const = 0;
};

// A finite bit sequence consumed strictly left to right. Copies share the
// underlying bits but own their cursor; a tape must not be read from two
// threads at once.
class BitTape {
 public:
  BitTape() = default;  // empty

  static BitTape FromWord(const Word& w);
  static BitTape FromString(std::string_view bits);
  // Raw bytes, most significant bit of each byte first.
  static BitTape FromBytes(const std::vector<std::uint8_t>& bytes);
  // `length` bits of the seeded stream starting at stream bit `offset`.
  static BitTape FromSeed(std::uint64_t seed, std::uint64_t length,
                          std::uint64_t offset = 0);
  // "seed:<u64>" expanded to `length` bits, or else a path to a raw bit
  // file, which is used whole.
  static BitTape FromSpec(const std::string& spec, std::uint64_t length);

  std::uint64_t size() const { return length_; }
  std::uint64_t cursor() const { return cursor_; }
  std::uint64_t remaining() const { return length_ - cursor_; }

  // Throws TapeExhausted (consuming nothing) if fewer than k bits remain.
  void Require(std::uint64_t k) const;
  // Peeks the next min(64, remaining) bits, left-aligned in 64.
  std::uint64_t Peek64() const;
  // Next k bits as an integer, at the cursor offset `skip`; no consumption.
  mpz_class PeekValue(std::uint64_t k, std::uint64_t skip = 0) const;
  // Reads k bits as an integer and advances.
  mpz_class Take(std::uint64_t k);
  void Skip(std::uint64_t k);
  // The unread part as an independent tape.
  BitTape Remainder() const;
  // The next k bits as a word, without consuming them.
  Word PeekWord(std::uint64_t k) const;

 private:
  BitTape(std::shared_ptr<const BitSource> source, std::uint64_t base,
          std::uint64_t length)
      : source_(std::move(source)), base_(base), length_(length) {}

  std::shared_ptr<const BitSource> source_;
  std::uint64_t base_ = 0;
  std::uint64_t length_ = 0;
  std::uint64_t cursor_ = 0;
};

// lo + floor(r * (hi - lo + 1) / 2^k), r the next k bits read as an
// integer. Consumes exactly k bits. Only as many bits as needed to settle
// the floor are inspected, so very long k stays cheap.
std::uint64_t DrawInteger(BitTape& tape, std::uint64_t lo, std::uint64_t hi,
                          std::uint64_t k);

// #{r in [0, 2^k) : floor(r * range / 2^k) = i}.
mpz_class IntervalCount(std::uint64_t k, std::uint64_t range, std::uint64_t i);

struct BiasProfile {
  std::uint64_t k = 0;
  std::uint64_t range = 0;
  std::vector<mpz_class> counts;  // per output index, out of 2^k
  mpq_class max_deviation;        // max |count/2^k - 1/range|
  mpq_class bound;                // 2^(-k+1)
  bool ok() const { return max_deviation <= bound; }
};

inline constexpr std::uint64_t kMaxEnumeratedK = 24;

// Runs DrawInteger over every one of the 2^k tapes. Throws BudgetError for
// k > 24.
BiasProfile EnumerateBias(std::uint64_t k, std::uint64_t range);
// The same profile from IntervalCount; any k.
BiasProfile ClosedFormBias(std::uint64_t k, std::uint64_t range);

enum class KProfile { kPaper, kPractical };

// N^2 + 2 for the paper profile, ceil(log2 N) + 64 for the practical one.
std::uint64_t BitsPerDraw(std::uint64_t urn, KProfile profile);
KProfile ParseKProfile(const std::string& name);
std::string KProfileName(KProfile profile);

// Fisher-Yates on (1..N): step j draws an index into the N - j values not
// yet placed (kept in increasing order) with k bits. Consumes exactly N*k.
std::vector<std::uint64_t> FisherYates(BitTape& tape, std::uint64_t n,
                                       std::uint64_t k);

struct SelectionResult {
  std::vector<std::uint64_t> chosen;  // in urn order
  std::uint64_t consumed = 0;
  BitTape remainder;
};

// Permutes the indicator word 1^m 0^(N-m) and keeps urn[i] iff position i
// carries a 1, i.e. iff perm[i] <= m. Throws DomainError for m > N.
SelectionResult SelectSubset(BitTape& tape, std::uint64_t m,
                             const std::vector<std::uint64_t>& urn,
                             std::uint64_t k);

struct SequenceProbability {
  std::vector<std::uint64_t> perm;
  mpq_class probability;
};

struct PermutationDistribution {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::vector<SequenceProbability> sequences;  // lexicographic by perm
  mpq_class total;
  mpq_class min_probability;
  // (1 - 2^-N)^N / N!, meaningful for k >= N^2 + 2.
  mpq_class paper_bound;
  // prod_j (1/(N-j) - 2^(-k+1)), from the single-draw bias bound; any k.
  mpq_class step_bound;
};

// Exact by composing IntervalCount per step. Throws BudgetError for N > 6
// or k > 256.
PermutationDistribution ComputePermutationDistribution(std::uint64_t n,
                                                       std::uint64_t k);

struct SubsetProbability {
  std::vector<std::uint64_t> subset;  // 1-based urn positions
  mpq_class probability;
};

struct SubsetDistribution {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  std::vector<SubsetProbability> subsets;
  mpq_class total;
  // m! (N-m)! prod_j (1/(N-j) -/+ 2^(-k+1)).
  mpq_class lower_bound;
  mpq_class upper_bound;
  // (1 - 2^-N)^N / C(N, m).
  mpq_class paper_bound;
};

SubsetDistribution ComputeSubsetDistribution(std::uint64_t n, std::uint64_t m,
                                             std::uint64_t k);

}  // namespace owflab

#endif  // OWFLAB_BITSAMPLER_H_
