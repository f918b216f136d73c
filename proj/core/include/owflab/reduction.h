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

#ifndef OWFLAB_REDUCTION_H_
#define OWFLAB_REDUCTION_H_

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "owflab/languages.h"
#include "owflab/words.h"

namespace owflab {

// ceil(sqrt(x))^2 - x for x >= 1; zero exactly when x is a square.
mpz_class NextSquareDelta(const mpz_class& x);

struct SquareCast {
  Word input;
  mpz_class delta;
  // Value ceil(sqrt(input))^2, written with max(len(input), bitlength) bits
  // so that it aligns with the input from the left.
  Word output;
  std::size_t delta_bits = 0;
  std::size_t hamming = 0;  // between the left-zero-padded input and output
  bool header_preserved = false;  // same length and same top ceil(log l) bits
};

// Throws DomainError for zero-valued words.
SquareCast CastToSquare(const Word& w);

// Smallest l from which l - ceil(log l) > ceil(l/2) + 4 holds for good: the
// delta plus one carry bit then stays clear of the program header. A carry
// that ripples through a run of ones can still reach it, so CastToSquare
// reports header_preserved per word rather than assuming it.
std::size_t HeaderSafeLength();

// code || w || 0^nu + delta, with total length lambda * k, k = len(code) +
// len(w), and delta the distance to the next square. Blocks are laid out at
// fixed offsets; no separator symbol is used.
struct PhiImage {
  Word source;
  Word code;
  unsigned lambda = 3;
  std::size_t k = 0;
  std::size_t nu = 0;
  mpz_class delta;
  Word image;

  std::size_t source_offset() const { return code.size(); }
  // len(image)/lambda - len(source): the offset constant needed to locate
  // the source block inside an image.
  std::size_t extraction_constant() const {
    return image.size() / lambda - source.size();
  }
};

// Throws ParameterError for lambda < 3, an empty code or one not starting
// with 1, or when the trailer is too short to absorb delta
// (3 + lambda*k/2 >= (lambda-1)*k); DomainError for an empty source.
PhiImage ReducePhi(const Word& w, const Word& code, unsigned lambda);

Word ExtractSource(const PhiImage& phi);

struct DensityTransferPoint {
  std::uint64_t x;     // value of the sampled source word
  std::uint64_t lhs;   // dens_L(x)
  std::uint64_t rhs;   // dens_phi(L)(value(phi(w)))
};

struct DensityTransferReport {
  std::vector<DensityTransferPoint> points;
  std::uint64_t violations = 0;
  std::uint64_t strict = 0;  // points with lhs < rhs
};

// Exhaustive check of dens_L((w)_2) <= dens_{phi(L)}((phi(w))_2) at
// `samples` canonical words spread evenly over [1, limit]. Both sides are
// counted by enumeration over nonempty words (the empty word has no
// image); preimages are enumerated up to the length bound implied by the
// target value. Throws BudgetError if 2^bitlen(limit) exceeds
// `budget`.
DensityTransferReport CheckDensityTransfer(
    const LanguageOracle& lang, const Word& code, unsigned lambda,
    std::uint64_t limit, std::size_t samples = 100,
    std::uint64_t budget = kDefaultDensityBudget);

struct SquareCastRow {
  std::uint64_t x;
  mpz_class delta;
  bool bitlen_bound_ok;
  bool header_preserved;
};

// Rows for x = lo..hi using the minimal binary word of each x.
std::vector<SquareCastRow> SquareCastSweep(std::uint64_t lo, std::uint64_t hi);
void WriteSquareCastCsv(std::ostream& out,
                        const std::vector<SquareCastRow>& rows);

}  // namespace owflab

#endif  // OWFLAB_REDUCTION_H_
