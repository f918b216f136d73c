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

#include "owflab/bitsampler.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>

#include "owflab/errors.h"

namespace owflab {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Bits pos..pos+63 of a stream given as 64-bit words.
template <typename WordAt>
std::uint64_t Window(std::uint64_t pos, WordAt&& word_at) {
  const std::uint64_t j = pos / 64;
  const unsigned off = pos % 64;
  if (off == 0) return word_at(j);
  return (word_at(j) << off) | (word_at(j + 1) >> (64 - off));
}

class PackedSource : public BitSource {
 public:
  explicit PackedSource(std::vector<std::uint64_t> words)
      : words_(std::move(words)) {}
  std::uint64_t Word64At(std::uint64_t pos) const override {
    return Window(pos, [this](std::uint64_t j) {
      return j < words_.size() ? words_[j] : 0;
    });
  }

 private:
  std::vector<std::uint64_t> words_;
};

class SeededSource : public BitSource {
 public:
  explicit SeededSource(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t Word64At(std::uint64_t pos) const override {
    return Window(pos,
                  [this](std::uint64_t j) { return SeedStreamWord(seed_, j); });
  }

 private:
  std::uint64_t seed_;
};

// floor(r * range / 2^k) for r < 2^k, k <= 64.
std::uint64_t ScaleDraw(std::uint64_t r, unsigned __int128 range, unsigned k) {
  return static_cast<std::uint64_t>((r * range) >> k);
}

static_assert(sizeof(unsigned long) == 8, "LP64 is assumed for GMP ui calls");

mpz_class Z(std::uint64_t v) {
  return mpz_class(static_cast<unsigned long>(v));
}

mpq_class PowerOfTwoInverse(std::uint64_t e) {
  mpz_class den = 1;
  den <<= e;
  return mpq_class(mpz_class(1), den);
}

mpz_class Factorial(std::uint64_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// (1 - 2^-N)^N.
mpq_class PaperFactor(std::uint64_t n) {
  mpq_class base = 1 - PowerOfTwoInverse(n);
  mpq_class acc = 1;
  for (std::uint64_t i = 0; i < n; ++i) acc *= base;
  return acc;
}

// prod_{j<N} (1/(N-j) + sign 2^(-k+1)).
mpq_class StepProduct(std::uint64_t n, std::uint64_t k, int sign) {
  const mpq_class slack = k >= 1 ? PowerOfTwoInverse(k - 1) : mpq_class(2);
  mpq_class acc = 1;
  for (std::uint64_t j = 0; j < n; ++j) {
    mpq_class h(1, static_cast<unsigned long>(n - j));
    acc *= sign > 0 ? mpq_class(h + slack) : mpq_class(h - slack);
  }
  return acc;
}

}  // namespace

std::uint64_t SeedStreamWord(std::uint64_t seed, std::uint64_t j) {
  return Mix64(seed + (j + 1) * kGoldenGamma);
}

BitTape BitTape::FromWord(const Word& w) {
  std::vector<std::uint64_t> words((w.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i]) words[i / 64] |= std::uint64_t{1} << (63 - i % 64);
  }
  return BitTape(std::make_shared<PackedSource>(std::move(words)), 0, w.size());
}

BitTape BitTape::FromString(std::string_view bits) {
  return FromWord(Word::FromString(bits));
}

BitTape BitTape::FromBytes(const std::vector<std::uint8_t>& bytes) {
  std::vector<std::uint64_t> words((bytes.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    words[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (56 - 8 * (i % 8));
  }
  return BitTape(std::make_shared<PackedSource>(std::move(words)), 0,
                 8 * static_cast<std::uint64_t>(bytes.size()));
}

BitTape BitTape::FromSeed(std::uint64_t seed, std::uint64_t length,
                          std::uint64_t offset) {
  if (offset > UINT64_MAX - length) {
    throw DomainError("BitTape::FromSeed: slice runs past 2^64 bits");
  }
  return BitTape(std::make_shared<SeededSource>(seed), offset, length);
}

BitTape BitTape::FromSpec(const std::string& spec, std::uint64_t length) {
  constexpr std::string_view kSeedPrefix = "seed:";
  if (spec.rfind(kSeedPrefix, 0) == 0) {
    const std::string digits = spec.substr(kSeedPrefix.size());
    std::size_t used = 0;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(digits, &used, 10);
    } catch (const std::exception&) {
      used = 0;
    }
    if (digits.empty() || used != digits.size()) {
      throw DomainError("BitTape::FromSpec: bad seed in '" + spec + "'");
    }
    return FromSeed(seed, length);
  }
  std::ifstream in(spec, std::ios::binary);
  if (!in) throw DomainError("BitTape::FromSpec: cannot open '" + spec + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return FromBytes(bytes);
}

void BitTape::Require(std::uint64_t k) const {
  if (k > remaining()) throw TapeExhausted(k, remaining());
}

std::uint64_t BitTape::Peek64() const {
  const std::uint64_t avail = remaining();
  if (avail == 0) return 0;
  std::uint64_t w = source_->Word64At(base_ + cursor_);
  if (avail < 64) w &= ~std::uint64_t{0} << (64 - avail);
  return w;
}

mpz_class BitTape::PeekValue(std::uint64_t k, std::uint64_t skip) const {
  if (skip > remaining() || k > remaining() - skip) {
    throw TapeExhausted(skip + k, remaining());
  }
  mpz_class v = 0;
  std::uint64_t pos = base_ + cursor_ + skip;
  std::uint64_t left = k;
  while (left >= 64) {
    v <<= 64;
    v += Z(source_->Word64At(pos));
    pos += 64;
    left -= 64;
  }
  if (left > 0) {
    v <<= left;
    v += Z(source_->Word64At(pos) >> (64 - left));
  }
  return v;
}

mpz_class BitTape::Take(std::uint64_t k) {
  mpz_class v = PeekValue(k);
  cursor_ += k;
  return v;
}

void BitTape::Skip(std::uint64_t k) {
  Require(k);
  cursor_ += k;
}

BitTape BitTape::Remainder() const {
  return BitTape(source_, base_ + cursor_, remaining());
}

Word BitTape::PeekWord(std::uint64_t k) const {
  const mpz_class v = PeekValue(k);
  return Word::FromInteger(v, k);
}

std::uint64_t DrawInteger(BitTape& tape, std::uint64_t lo, std::uint64_t hi,
                          std::uint64_t k) {
  if (lo > hi) throw DomainError("DrawInteger: lo > hi");
  if (lo == 0 && hi == UINT64_MAX) {
    throw DomainError("DrawInteger: range must be below 2^64");
  }
  tape.Require(k);
  const unsigned __int128 range = static_cast<unsigned __int128>(hi - lo) + 1;
  std::uint64_t q;
  if (k == 0) {
    q = 0;
  } else if (k <= 64) {
    q = ScaleDraw(tape.Peek64() >> (64 - k), range, static_cast<unsigned>(k));
  } else {
    // r = P 2^(k-64) + rest with 0 <= rest < 2^(k-64) puts r*range/2^k in
    // [P*range, (P+1)*range) / 2^64; one window usually pins the floor.
    const unsigned __int128 a = tape.Peek64() * range;
    const auto q_lo = static_cast<std::uint64_t>(a >> 64);
    const auto q_hi = static_cast<std::uint64_t>((a + (range - 1)) >> 64);
    if (q_lo == q_hi) {
      q = q_lo;
    } else {
      mpz_class r = tape.PeekValue(k);
      r *= Z(static_cast<std::uint64_t>(range));
      r >>= k;
      q = r.get_ui();
    }
  }
  tape.Skip(k);
  return lo + q;
}

mpz_class IntervalCount(std::uint64_t k, std::uint64_t range, std::uint64_t i) {
  if (range == 0 || i >= range) {
    throw DomainError("IntervalCount: index outside range");
  }
  const mpz_class r = Z(range);
  mpz_class scale = 1;
  scale <<= k;
  mpz_class a = Z(i) * scale;
  mpz_class b = Z(i + 1) * scale;
  mpz_class ca, cb;
  mpz_cdiv_q(ca.get_mpz_t(), a.get_mpz_t(), r.get_mpz_t());
  mpz_cdiv_q(cb.get_mpz_t(), b.get_mpz_t(), r.get_mpz_t());
  return cb - ca;
}

namespace {

BiasProfile FinishProfile(std::uint64_t k, std::uint64_t range,
                          std::vector<mpz_class> counts) {
  BiasProfile p;
  p.k = k;
  p.range = range;
  p.counts = std::move(counts);
  mpz_class total = 1;
  total <<= k;
  const mpq_class h(1, static_cast<unsigned long>(range));
  p.max_deviation = 0;
  for (const auto& c : p.counts) {
    mpq_class dev = mpq_class(c, total) - h;
    dev.canonicalize();
    p.max_deviation = std::max(p.max_deviation, mpq_class(abs(dev)));
  }
  p.bound = k >= 1 ? PowerOfTwoInverse(k - 1) : mpq_class(2);
  return p;
}

}  // namespace

BiasProfile EnumerateBias(std::uint64_t k, std::uint64_t range) {
  if (k > kMaxEnumeratedK) throw BudgetError("EnumerateBias: k exceeds 24");
  if (range == 0) throw DomainError("EnumerateBias: empty range");
  std::vector<std::uint64_t> tally(range, 0);
  const std::uint64_t patterns = std::uint64_t{1} << k;
  for (std::uint64_t r = 0; r < patterns; ++r) {
    ++tally[k == 0 ? 0 : ScaleDraw(r, range, static_cast<unsigned>(k))];
  }
  std::vector<mpz_class> counts;
  counts.reserve(range);
  for (std::uint64_t c : tally) counts.push_back(Z(c));
  return FinishProfile(k, range, std::move(counts));
}

BiasProfile ClosedFormBias(std::uint64_t k, std::uint64_t range) {
  if (range == 0) throw DomainError("ClosedFormBias: empty range");
  std::vector<mpz_class> counts;
  counts.reserve(range);
  for (std::uint64_t i = 0; i < range; ++i) {
    counts.push_back(IntervalCount(k, range, i));
  }
  return FinishProfile(k, range, std::move(counts));
}

std::uint64_t BitsPerDraw(std::uint64_t urn, KProfile profile) {
  if (urn == 0) throw DomainError("BitsPerDraw: empty urn");
  if (profile == KProfile::kPractical) return CeilLog2(urn) + 64;
  if (urn > (std::uint64_t{1} << 31)) {
    throw DomainError("BitsPerDraw: N^2 + 2 exceeds 64 bits");
  }
  return urn * urn + 2;
}

KProfile ParseKProfile(const std::string& name) {
  if (name == "paper") return KProfile::kPaper;
  if (name == "practical") return KProfile::kPractical;
  throw DomainError("unknown k profile '" + name + "'");
}

std::string KProfileName(KProfile profile) {
  return profile == KProfile::kPaper ? "paper" : "practical";
}

std::vector<std::uint64_t> FisherYates(BitTape& tape, std::uint64_t n,
                                       std::uint64_t k) {
  if (n != 0 && k > UINT64_MAX / n) {
    throw DomainError("FisherYates: N*k overflows");
  }
  tape.Require(n * k);
  std::vector<std::uint64_t> left(n);
  for (std::uint64_t i = 0; i < n; ++i) left[i] = i + 1;
  std::vector<std::uint64_t> perm;
  perm.reserve(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    const std::uint64_t i = DrawInteger(tape, 0, n - j - 1, k);
    perm.push_back(left[i]);
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return perm;
}

SelectionResult SelectSubset(BitTape& tape, std::uint64_t m,
                             const std::vector<std::uint64_t>& urn,
                             std::uint64_t k) {
  if (m > urn.size()) throw DomainError("SelectSubset: m exceeds urn size");
  const std::uint64_t start = tape.cursor();
  const std::vector<std::uint64_t> perm = FisherYates(tape, urn.size(), k);
  SelectionResult result;
  result.chosen.reserve(m);
  for (std::size_t i = 0; i < urn.size(); ++i) {
    if (perm[i] <= m) result.chosen.push_back(urn[i]);
  }
  result.consumed = tape.cursor() - start;
  result.remainder = tape.Remainder();
  return result;
}

PermutationDistribution ComputePermutationDistribution(std::uint64_t n,
                                                       std::uint64_t k) {
  if (n > 6 || k > 256) {
    throw BudgetError("ComputePermutationDistribution: needs N <= 6, k <= 256");
  }
  PermutationDistribution d;
  d.n = n;
  d.k = k;
  // Per-step interval counts are shared by every sequence.
  std::vector<std::vector<mpz_class>> counts(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    for (std::uint64_t i = 0; i < n - j; ++i) {
      counts[j].push_back(IntervalCount(k, n - j, i));
    }
  }
  mpz_class denom = 1;
  denom <<= k * n;

  std::vector<std::uint64_t> left(n);
  for (std::uint64_t i = 0; i < n; ++i) left[i] = i + 1;
  std::vector<std::uint64_t> perm;
  auto recurse = [&](auto&& self, std::uint64_t j, const mpz_class& acc) {
    if (j == n) {
      mpq_class p(acc, denom);
      p.canonicalize();
      d.sequences.push_back({perm, p});
      return;
    }
    for (std::uint64_t i = 0; i < n - j; ++i) {
      const std::uint64_t v = left[i];
      left.erase(left.begin() + static_cast<std::ptrdiff_t>(i));
      perm.push_back(v);
      self(self, j + 1, acc * counts[j][i]);
      perm.pop_back();
      left.insert(left.begin() + static_cast<std::ptrdiff_t>(i), v);
    }
  };
  recurse(recurse, 0, mpz_class(1));
  std::sort(d.sequences.begin(), d.sequences.end(),
            [](const auto& a, const auto& b) { return a.perm < b.perm; });

  d.total = 0;
  d.min_probability = d.sequences.empty() ? mpq_class(0)
                                          : d.sequences.front().probability;
  for (const auto& s : d.sequences) {
    d.total += s.probability;
    d.min_probability = std::min(d.min_probability, s.probability);
  }
  d.paper_bound = PaperFactor(n) / mpq_class(Factorial(n));
  d.step_bound = StepProduct(n, k, -1);
  return d;
}

SubsetDistribution ComputeSubsetDistribution(std::uint64_t n, std::uint64_t m,
                                             std::uint64_t k) {
  if (m > n) throw DomainError("ComputeSubsetDistribution: m exceeds N");
  const PermutationDistribution perms = ComputePermutationDistribution(n, k);
  std::map<std::vector<std::uint64_t>, mpq_class> acc;
  for (const auto& s : perms.sequences) {
    std::vector<std::uint64_t> subset;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (s.perm[i] <= m) subset.push_back(i + 1);
    }
    acc[subset] += s.probability;
  }
  SubsetDistribution d;
  d.n = n;
  d.m = m;
  d.k = k;
  d.total = 0;
  for (auto& [subset, p] : acc) {
    d.total += p;
    d.subsets.push_back({subset, p});
  }
  const mpq_class arrangements(Factorial(m) * Factorial(n - m));
  d.lower_bound = arrangements * StepProduct(n, k, -1);
  d.upper_bound = arrangements * StepProduct(n, k, +1);
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), n, m);
  d.paper_bound = PaperFactor(n) / mpq_class(binom);
  return d;
}

}  // namespace owflab
