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

#include "owflab/reduction.h"

#include <algorithm>
#include <ostream>
#include <string>

#include "owflab/errors.h"

namespace owflab {
namespace {

std::size_t BitLength(const mpz_class& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

mpz_class GoedelValue(const Word& w) {
  mpz_class g = WordValue(w);
  mpz_class top;
  mpz_ui_pow_ui(top.get_mpz_t(), 2, w.size());
  return g + top;
}

}  // namespace

mpz_class NextSquareDelta(const mpz_class& x) {
  if (x < 1) throw DomainError("NextSquareDelta: x must be >= 1");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  if (r * r == x) return 0;
  ++r;
  return r * r - x;
}

SquareCast CastToSquare(const Word& w) {
  const mpz_class x = WordValue(w);
  if (x == 0) throw DomainError("CastToSquare: word has value 0");
  SquareCast cast;
  cast.input = w;
  cast.delta = NextSquareDelta(x);
  const mpz_class out = x + cast.delta;
  const std::size_t len = std::max(w.size(), BitLength(out));
  cast.output = Word::FromInteger(out, len);
  cast.delta_bits = BitLength(cast.delta);
  cast.hamming = HammingDistance(Word::FromInteger(x, len), cast.output);
  if (len == w.size()) {
    const std::size_t h = CeilLog2(static_cast<std::uint64_t>(w.size()));
    cast.header_preserved = w.Slice(0, h) == cast.output.Slice(0, h);
  }
  return cast;
}

std::size_t HeaderSafeLength() {
  // The inequality is eventually monotone; past a few thousand the slack
  // only grows, so the last failure below that bound is the last one.
  std::size_t last_fail = 0;
  for (std::size_t l = 1; l <= 4096; ++l) {
    const std::size_t lhs = l - CeilLog2(static_cast<std::uint64_t>(l));
    if (!(lhs > (l + 1) / 2 + 4)) last_fail = l;
  }
  return last_fail + 1;
}

PhiImage ReducePhi(const Word& w, const Word& code, unsigned lambda) {
  if (lambda < 3) throw ParameterError("ReducePhi: lambda must be >= 3");
  if (!code.IsCanonical()) {
    throw ParameterError("ReducePhi: code must be nonempty and start with 1");
  }
  if (w.empty()) throw DomainError("ReducePhi: empty source word");
  PhiImage phi;
  phi.source = w;
  phi.code = code;
  phi.lambda = lambda;
  phi.k = code.size() + w.size();
  phi.nu = (lambda - 1) * phi.k;
  // 3 + lambda*k/2 < (lambda-1)*k, doubled to stay in integers.
  if (!(6 + lambda * phi.k < 2 * phi.nu)) {
    throw ParameterError("ReducePhi: trailer too short for k = " +
                         std::to_string(phi.k));
  }
  const Word base = code.Concat(w).Concat(Word::Zeros(phi.nu));
  const mpz_class value = WordValue(base);
  phi.delta = NextSquareDelta(value);
  if (BitLength(phi.delta) > phi.nu) {
    throw ContractViolation("ReducePhi: delta overflows the zero trailer");
  }
  phi.image = Word::FromInteger(value + phi.delta, base.size());
  return phi;
}

Word ExtractSource(const PhiImage& phi) {
  return phi.image.Slice(phi.source_offset(), phi.source.size());
}

DensityTransferReport CheckDensityTransfer(const LanguageOracle& lang,
                                           const Word& code, unsigned lambda,
                                           std::uint64_t limit,
                                           std::size_t samples,
                                           std::uint64_t budget) {
  if (limit == 0) throw DomainError("CheckDensityTransfer: limit must be >= 1");
  if (samples == 0) throw DomainError("CheckDensityTransfer: no samples");
  const std::size_t max_len = BitLength(mpz_class(limit));
  if (max_len >= 63 || (std::uint64_t{2} << max_len) > budget) {
    throw BudgetError("CheckDensityTransfer: preimage space exceeds budget");
  }
  DensityTable lhs_table = BuildDensityTable(lang, limit, 1, budget);
  if (lang.member(Word())) {
    for (auto& c : lhs_table.counts) c -= c > 0 ? 1 : 0;
  }

  // Gödel numbers of phi(v) for every member v no longer than the longest
  // sample. Shorter images always sort below longer ones, so this covers
  // every image that can fall under a sampled bound.
  std::vector<mpz_class> images;
  for (std::uint64_t g = 2; g < (std::uint64_t{2} << max_len); ++g) {
    const Word v = GoedelInverse(g);
    if (!lang.member(v)) continue;
    images.push_back(GoedelValue(ReducePhi(v, code, lambda).image));
  }
  std::sort(images.begin(), images.end());

  DensityTransferReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    std::uint64_t x = 1;
    if (samples > 1) {
      x += static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(limit - 1) * i) / (samples - 1));
    }
    if (!report.points.empty() && report.points.back().x == x) continue;
    const Word w = Word::FromUint64(x);
    const mpz_class bound = WordValue(ReducePhi(w, code, lambda).image);
    DensityTransferPoint p;
    p.x = x;
    p.lhs = lhs_table.at(x);
    p.rhs = static_cast<std::uint64_t>(
        std::upper_bound(images.begin(), images.end(), bound) -
        images.begin());
    if (p.lhs > p.rhs) ++report.violations;
    if (p.lhs < p.rhs) ++report.strict;
    report.points.push_back(p);
  }
  return report;
}

std::vector<SquareCastRow> SquareCastSweep(std::uint64_t lo, std::uint64_t hi) {
  if (lo == 0) throw DomainError("SquareCastSweep: lo must be >= 1");
  std::vector<SquareCastRow> rows;
  for (std::uint64_t x = lo; x <= hi && x >= lo; ++x) {
    const SquareCast c = CastToSquare(Word::FromUint64(x));
    rows.push_back({x, c.delta, 2 * c.delta_bits <= 6 + c.input.size(),
                    c.header_preserved});
    if (x == UINT64_MAX) break;
  }
  return rows;
}

void WriteSquareCastCsv(std::ostream& out,
                        const std::vector<SquareCastRow>& rows) {
  out << "x,delta,bitlen_bound_ok,header_preserved\n";
  for (const auto& r : rows) {
    out << r.x << ',' << r.delta.get_str() << ',' << (r.bitlen_bound_ok ? 1 : 0)
        << ',' << (r.header_preserved ? 1 : 0) << '\n';
  }
}

}  // namespace owflab
