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

#ifndef OWFLAB_WORDS_H_
#define OWFLAB_WORDS_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace owflab {

// A finite bit string over {0,1}, stored most significant bit first so that
// bit 0 is the leftmost character of the string notation.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> bits);

  // Parses a string of '0'/'1' characters. Throws DomainError otherwise.
  static Word FromString(std::string_view text);
  // Minimal binary representation of `value` (leading 1); 0 maps to the
  // empty word.
  static Word FromInteger(const mpz_class& value);
  static Word FromUint64(std::uint64_t value);
  // `value` written with exactly `length` bits, zero-padded on the left.
  // Throws DomainError if it does not fit.
  static Word FromInteger(const mpz_class& value, std::size_t length);
  static Word Zeros(std::size_t length);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  // Nonempty and starts with a 1, i.e. of the form 1(0|1)*.
  bool IsCanonical() const { return !bits_.empty() && bits_[0] == 1; }

  Word Slice(std::size_t begin, std::size_t length) const;
  Word Concat(const Word& tail) const;
  void PushBack(std::uint8_t bit);

  std::string ToString() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// A positive integer naming a word under the numbering w -> (1w)_2.
class GoedelIndex {
 public:
  // Throws DomainError unless value >= 1.
  explicit GoedelIndex(mpz_class value);
  explicit GoedelIndex(std::uint64_t value);

  const mpz_class& value() const { return value_; }
  bool FitsUint64() const;
  std::uint64_t ToUint64() const;  // Throws DomainError if it does not fit.

  friend bool operator==(const GoedelIndex& a, const GoedelIndex& b) {
    return a.value_ == b.value_;
  }
  friend auto operator<=>(const GoedelIndex& a, const GoedelIndex& b) {
    const int c = cmp(a.value_, b.value_);
    return c <=> 0;
  }

 private:
  mpz_class value_;
};

// (w)_2, most significant bit first; the empty word has value 0.
mpz_class WordValue(const Word& w);

// (1w)_2. A bijection between all words and the positive integers.
GoedelIndex GoedelNumber(const Word& w);

// Strips the leading 1 from the binary form of n.
Word GoedelInverse(const GoedelIndex& n);
Word GoedelInverse(std::uint64_t n);

// Gödel number of the minimal binary representation of y, computed as
// 2^(ceil(log y) + c(y)) + y with c(y) = 1 iff y is a power of two.
// Throws DomainError for y = 0.
GoedelIndex GoedelNumberOfInteger(const mpz_class& y);

// ceil(log2 x) for x >= 1.
unsigned CeilLog2(std::uint64_t x);
std::size_t CeilLog2(const mpz_class& x);

// Number of differing positions. Throws DomainError on unequal lengths.
std::size_t HammingDistance(const Word& a, const Word& b);

}  // namespace owflab

#endif  // OWFLAB_WORDS_H_
