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

#include "owflab/words.h"

#include <bit>
#include <utility>

#include "owflab/errors.h"

namespace owflab {

Word::Word(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_) {
    if (b > 1) throw DomainError("Word: bits must be 0 or 1");
  }
}

Word Word::FromString(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DomainError("Word: invalid character in bit string");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  Word w;
  w.bits_ = std::move(bits);
  return w;
}

Word Word::FromInteger(const mpz_class& value) {
  if (sgn(value) < 0) throw DomainError("Word: negative value");
  if (sgn(value) == 0) return Word();
  const std::size_t len = mpz_sizeinbase(value.get_mpz_t(), 2);
  Word w;
  w.bits_.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    w.bits_[i] =
        static_cast<std::uint8_t>(mpz_tstbit(value.get_mpz_t(), len - 1 - i));
  }
  return w;
}

Word Word::FromUint64(std::uint64_t value) {
  Word w;
  const int len = 64 - std::countl_zero(value);
  w.bits_.resize(len);
  for (int i = 0; i < len; ++i) {
    w.bits_[i] = static_cast<std::uint8_t>((value >> (len - 1 - i)) & 1u);
  }
  return w;
}

Word Word::FromInteger(const mpz_class& value, std::size_t length) {
  Word minimal = FromInteger(value);
  if (minimal.size() > length) {
    throw DomainError("Word: value does not fit in requested length");
  }
  Word w = Zeros(length - minimal.size());
  w.bits_.insert(w.bits_.end(), minimal.bits_.begin(), minimal.bits_.end());
  return w;
}

Word Word::Zeros(std::size_t length) {
  Word w;
  w.bits_.assign(length, 0);
  return w;
}

Word Word::Slice(std::size_t begin, std::size_t length) const {
  if (begin > bits_.size() || length > bits_.size() - begin) {
    throw DomainError("Word::Slice out of range");
  }
  Word w;
  w.bits_.assign(bits_.begin() + begin, bits_.begin() + begin + length);
  return w;
}

Word Word::Concat(const Word& tail) const {
  Word w = *this;
  w.bits_.insert(w.bits_.end(), tail.bits_.begin(), tail.bits_.end());
  return w;
}

void Word::PushBack(std::uint8_t bit) {
  if (bit > 1) throw DomainError("Word: bits must be 0 or 1");
  bits_.push_back(bit);
}

std::string Word::ToString() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

GoedelIndex::GoedelIndex(mpz_class value) : value_(std::move(value)) {
  if (value_ < 1) throw DomainError("0 is not a Goedel index");
}

GoedelIndex::GoedelIndex(std::uint64_t value) {
  if (value == 0) throw DomainError("0 is not a Goedel index");
  mpz_import(value_.get_mpz_t(), 1, 1, sizeof(value), 0, 0, &value);
}

bool GoedelIndex::FitsUint64() const {
  return mpz_sizeinbase(value_.get_mpz_t(), 2) <= 64;
}

std::uint64_t GoedelIndex::ToUint64() const {
  if (!FitsUint64()) throw DomainError("Goedel index exceeds 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, value_.get_mpz_t());
  return out;
}

mpz_class WordValue(const Word& w) {
  mpz_class v = 0;
  if (w.empty()) return v;
  mpz_realloc2(v.get_mpz_t(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i]) mpz_setbit(v.get_mpz_t(), w.size() - 1 - i);
  }
  return v;
}

GoedelIndex GoedelNumber(const Word& w) {
  mpz_class v = WordValue(w);
  mpz_setbit(v.get_mpz_t(), w.size());
  return GoedelIndex(std::move(v));
}

Word GoedelInverse(const GoedelIndex& n) {
  Word full = Word::FromInteger(n.value());
  return full.Slice(1, full.size() - 1);
}

Word GoedelInverse(std::uint64_t n) {
  if (n == 0) throw DomainError("0 is not a Goedel index");
  const int len = 63 - std::countl_zero(n);
  std::vector<std::uint8_t> bits(len);
  for (int i = 0; i < len; ++i) {
    bits[i] = static_cast<std::uint8_t>((n >> (len - 1 - i)) & 1u);
  }
  return Word(std::move(bits));
}

unsigned CeilLog2(std::uint64_t x) {
  if (x == 0) throw DomainError("CeilLog2(0)");
  return x == 1 ? 0u : 64u - static_cast<unsigned>(std::countl_zero(x - 1));
}

std::size_t CeilLog2(const mpz_class& x) {
  if (x < 1) throw DomainError("CeilLog2 of non-positive value");
  const std::size_t floor_log = mpz_sizeinbase(x.get_mpz_t(), 2) - 1;
  const bool power_of_two =
      mpz_scan1(x.get_mpz_t(), 0) == static_cast<mp_bitcnt_t>(floor_log);
  return power_of_two ? floor_log : floor_log + 1;
}

GoedelIndex GoedelNumberOfInteger(const mpz_class& y) {
  if (y < 1) throw DomainError("GoedelNumberOfInteger: y must be >= 1");
  const std::size_t ceil_log = CeilLog2(y);
  const bool power_of_two = mpz_popcount(y.get_mpz_t()) == 1;
  const std::size_t padding = power_of_two ? 1 : 0;
  mpz_class out = y;
  mpz_class high;
  mpz_ui_pow_ui(high.get_mpz_t(), 2, ceil_log + padding);
  out += high;
  return GoedelIndex(std::move(out));
}

std::size_t HammingDistance(const Word& a, const Word& b) {
  if (a.size() != b.size()) {
    throw DomainError("HammingDistance: words of unequal length");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

}  // namespace owflab
