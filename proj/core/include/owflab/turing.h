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

#ifndef OWFLAB_TURING_H_
#define OWFLAB_TURING_H_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "owflab/words.h"

namespace owflab {

enum class Symbol : std::uint8_t { kZero = 0, kOne = 1, kBlank = 2 };
enum class Move : std::uint8_t { kLeft = 0, kRight = 1 };

struct Transition {
  std::uint8_t next = 1;
  Symbol write = Symbol::kBlank;
  Move move = Move::kRight;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Deterministic single-tape machine over {0, 1, blank}. State 0 accepts,
// state 1 rejects, execution starts in state 2. Rows for the two halting
// states are carried for the fixed-width format but never executed.
struct TMSpec {
  static constexpr std::uint8_t kAccept = 0;
  static constexpr std::uint8_t kReject = 1;
  static constexpr std::uint8_t kStart = 2;
  static constexpr unsigned kMaxStates = 15;

  unsigned num_states = 3;
  std::vector<Transition> table;  // num_states * 3, indexed [state][symbol]

  const Transition& at(unsigned state, Symbol s) const {
    return table[state * 3 + static_cast<unsigned>(s)];
  }
  Transition& at(unsigned state, Symbol s) {
    return table[state * 3 + static_cast<unsigned>(s)];
  }

  friend bool operator==(const TMSpec&, const TMSpec&) = default;
};

// Every transition of the start state goes to reject.
TMSpec CanonicalRejectMachine();
// Every transition of the start state goes to accept.
TMSpec AcceptImmediatelyMachine();
// Moves right over 0/1 and accepts on the first blank.
TMSpec RightScannerMachine();

// Code format: 4-bit state count S (3 <= S <= 15), then S*3 transition
// entries of 7 bits each, row-major over (state, symbol 0/1/blank):
// next state (4 bits), written symbol (2 bits: 00=0, 01=1, 10=blank),
// move (1 bit: 0=left, 1=right). Bits after the table are ignored.
Word EncodeMachine(const TMSpec& spec);
// nullopt for truncated codes and out-of-range fields.
std::optional<TMSpec> ParseMachineCode(const Word& code);
// Bits needed by EncodeMachine for a machine with `num_states` states.
std::size_t MachineCodeLength(unsigned num_states);

struct PaddedProgram {
  Word source;
  Word header;  // the ceil(log2 len) most significant bits
  Word code;    // header after dropping the 1^k 0 prefix
  bool valid = false;
  TMSpec spec;  // CanonicalRejectMachine() when !valid
};

// Only the top ceil(log2 len(w)) bits matter; the rest is padding.
// Throws DomainError for the empty word.
PaddedProgram DecodeProgram(const Word& w);

enum class Outcome { kAccept, kReject, kTimeout };

struct SimResult {
  Outcome outcome;
  std::uint64_t steps;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

// Runs `spec` on a tape holding `input` with the head on its first cell for
// at most `budget` steps. Throws DomainError for budget = 0.
SimResult Simulate(const TMSpec& spec, const Word& input, std::uint64_t budget);

// Time functions for the hierarchy construction. Only T is ever evaluated;
// t is kept for reporting.
struct TimeBounds {
  std::function<std::uint64_t(std::uint64_t)> upper;  // T
  std::function<double(std::uint64_t)> lower;         // t
};

// T(x) = 2^x (exact for x <= 63) and t(x) = L_x[1, 1/2].
TimeBounds DefaultTimeBounds();

inline constexpr std::size_t kMaxDiagonalLength = 20;

// `spec` halts and rejects `w` within `budget` steps.
bool DiagonalVerdict(const TMSpec& spec, const Word& w, std::uint64_t budget);

// w in L_D: the machine decoded from w rejects w within T(len w) steps.
// Throws BudgetError above kMaxDiagonalLength.
bool DiagonalMember(const Word& w, const TimeBounds& bounds);

// 2^(l - ceil(log2 l)): length-l words sharing any given header.
mpz_class EquivalentEncodingCount(std::uint64_t length);

struct CensusRow {
  std::uint64_t length;
  std::uint64_t members;        // |L_D ∩ {0,1}^length|
  std::uint64_t header_classes;  // 2^ceil(log2 length)
};

// Exhaustive over {0,1}^length; words are dealt round-robin to `threads`
// workers and the per-shard counts summed.
CensusRow DiagonalCensus(std::uint64_t length, const TimeBounds& bounds,
                         unsigned threads = 1);

void WriteCensusCsv(std::ostream& out, const std::vector<CensusRow>& rows);

}  // namespace owflab

#endif  // OWFLAB_TURING_H_
