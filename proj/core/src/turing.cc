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

#include "owflab/turing.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include "owflab/errors.h"

namespace owflab {
namespace {

constexpr unsigned kStateBits = 4;
constexpr unsigned kEntryBits = 7;

TMSpec UniformMachine(std::uint8_t target) {
  TMSpec spec;
  spec.num_states = 3;
  spec.table.assign(9, Transition{TMSpec::kReject, Symbol::kBlank,
                                  Move::kRight});
  for (Symbol s : {Symbol::kZero, Symbol::kOne, Symbol::kBlank}) {
    spec.at(TMSpec::kStart, s) = Transition{target, s, Move::kRight};
  }
  return spec;
}

void AppendField(std::vector<std::uint8_t>& bits, unsigned value,
                 unsigned width) {
  for (unsigned i = 0; i < width; ++i) {
    bits.push_back(static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u));
  }
}

unsigned ReadField(const Word& w, std::size_t pos, unsigned width) {
  unsigned v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | w[pos + i];
  return v;
}

}  // namespace

TMSpec CanonicalRejectMachine() { return UniformMachine(TMSpec::kReject); }

TMSpec AcceptImmediatelyMachine() { return UniformMachine(TMSpec::kAccept); }

TMSpec RightScannerMachine() {
  TMSpec spec = UniformMachine(TMSpec::kStart);
  spec.at(TMSpec::kStart, Symbol::kBlank) =
      Transition{TMSpec::kAccept, Symbol::kBlank, Move::kRight};
  return spec;
}

std::size_t MachineCodeLength(unsigned num_states) {
  return kStateBits + static_cast<std::size_t>(num_states) * 3 * kEntryBits;
}

Word EncodeMachine(const TMSpec& spec) {
  if (spec.num_states < 3 || spec.num_states > TMSpec::kMaxStates ||
      spec.table.size() != spec.num_states * 3) {
    throw DomainError("EncodeMachine: malformed machine");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(MachineCodeLength(spec.num_states));
  AppendField(bits, spec.num_states, kStateBits);
  for (const Transition& t : spec.table) {
    if (t.next >= spec.num_states) {
      throw DomainError("EncodeMachine: transition to unknown state");
    }
    AppendField(bits, t.next, 4);
    AppendField(bits, static_cast<unsigned>(t.write), 2);
    AppendField(bits, static_cast<unsigned>(t.move), 1);
  }
  return Word(std::move(bits));
}

std::optional<TMSpec> ParseMachineCode(const Word& code) {
  if (code.size() < kStateBits) return std::nullopt;
  const unsigned states = ReadField(code, 0, kStateBits);
  if (states < 3) return std::nullopt;
  if (code.size() < MachineCodeLength(states)) return std::nullopt;
  TMSpec spec;
  spec.num_states = states;
  spec.table.resize(states * 3);
  std::size_t pos = kStateBits;
  for (Transition& t : spec.table) {
    const unsigned next = ReadField(code, pos, 4);
    const unsigned sym = ReadField(code, pos + 4, 2);
    const unsigned move = ReadField(code, pos + 6, 1);
    pos += kEntryBits;
    if (next >= states || sym > 2) return std::nullopt;
    t = Transition{static_cast<std::uint8_t>(next), static_cast<Symbol>(sym),
                   static_cast<Move>(move)};
  }
  return spec;
}

PaddedProgram DecodeProgram(const Word& w) {
  if (w.empty()) throw DomainError("DecodeProgram: empty word");
  PaddedProgram p;
  p.source = w;
  p.header = w.Slice(0, CeilLog2(static_cast<std::uint64_t>(w.size())));
  std::size_t i = 0;
  while (i < p.header.size() && p.header[i] == 1) ++i;
  std::optional<TMSpec> parsed;
  if (i < p.header.size()) {
    p.code = p.header.Slice(i + 1, p.header.size() - i - 1);
    parsed = ParseMachineCode(p.code);
  }
  p.valid = parsed.has_value();
  p.spec = parsed ? *std::move(parsed) : CanonicalRejectMachine();
  return p;
}

SimResult Simulate(const TMSpec& spec, const Word& input,
                   std::uint64_t budget) {
  if (budget == 0) throw DomainError("Simulate: budget must be >= 1");
  // Tape grows in both directions; `origin` is the index of input cell 0.
  std::vector<std::uint8_t> tape(input.bits().begin(), input.bits().end());
  if (tape.empty()) tape.push_back(static_cast<std::uint8_t>(Symbol::kBlank));
  std::size_t origin = 0;
  std::int64_t head = 0;
  unsigned state = TMSpec::kStart;
  for (std::uint64_t step = 1; step <= budget; ++step) {
    const std::int64_t cell = head + static_cast<std::int64_t>(origin);
    const Transition& t = spec.at(state, static_cast<Symbol>(tape[cell]));
    tape[cell] = static_cast<std::uint8_t>(t.write);
    state = t.next;
    if (state == TMSpec::kAccept) return {Outcome::kAccept, step};
    if (state == TMSpec::kReject) return {Outcome::kReject, step};
    head += t.move == Move::kRight ? 1 : -1;
    const std::int64_t next = head + static_cast<std::int64_t>(origin);
    if (next < 0) {
      const std::size_t grow = std::max<std::size_t>(tape.size(), 16);
      tape.insert(tape.begin(), grow,
                  static_cast<std::uint8_t>(Symbol::kBlank));
      origin += grow;
    } else if (static_cast<std::size_t>(next) >= tape.size()) {
      tape.resize(tape.size() * 2 + 16,
                  static_cast<std::uint8_t>(Symbol::kBlank));
    }
  }
  return {Outcome::kTimeout, budget};
}

TimeBounds DefaultTimeBounds() {
  TimeBounds b;
  b.upper = [](std::uint64_t x) -> std::uint64_t {
    if (x > 63) throw BudgetError("T(x) = 2^x exceeds 64 bits");
    return std::uint64_t{1} << x;
  };
  b.lower = [](std::uint64_t x) -> double {
    if (x < 3) return 1.0;  // log log x is not positive below e^1
    const double lg = std::log2(static_cast<double>(x));
    return std::exp2(std::sqrt(lg) * std::sqrt(std::log2(lg)));
  };
  return b;
}

bool DiagonalVerdict(const TMSpec& spec, const Word& w, std::uint64_t budget) {
  return Simulate(spec, w, budget).outcome == Outcome::kReject;
}

bool DiagonalMember(const Word& w, const TimeBounds& bounds) {
  if (w.size() > kMaxDiagonalLength) {
    throw BudgetError("DiagonalMember: word longer than the toy-scale guard");
  }
  const PaddedProgram program = DecodeProgram(w);
  return DiagonalVerdict(program.spec, w, bounds.upper(w.size()));
}

mpz_class EquivalentEncodingCount(std::uint64_t length) {
  if (length == 0) throw DomainError("EquivalentEncodingCount: length >= 1");
  const unsigned header = CeilLog2(length);
  mpz_class count;
  mpz_ui_pow_ui(count.get_mpz_t(), 2, length - header);
  // 2^(l - ceil(log l)) >= 2^(l - log l - 1) since ceil(log l) < log l + 1.
  if (static_cast<double>(length - header) <
      static_cast<double>(length) - std::log2(static_cast<double>(length)) -
          1.0) {
    throw std::logic_error("EquivalentEncodingCount: lower bound failed");
  }
  return count;
}

CensusRow DiagonalCensus(std::uint64_t length, const TimeBounds& bounds,
                         unsigned threads) {
  if (length == 0 || length > kMaxDiagonalLength) {
    throw BudgetError("DiagonalCensus: length outside [1, 20]");
  }
  const std::uint64_t total = std::uint64_t{1} << length;
  threads = std::max(1u, std::min<unsigned>(threads, 64));
  std::vector<std::uint64_t> partial(threads, 0);
  auto work = [&](unsigned shard) {
    std::uint64_t count = 0;
    for (std::uint64_t v = shard; v < total; v += threads) {
      if (DiagonalMember(Word::FromInteger(mpz_class(v), length), bounds)) {
        ++count;
      }
    }
    partial[shard] = count;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  CensusRow row{length, 0,
                std::uint64_t{1} << CeilLog2(static_cast<std::uint64_t>(length))};
  for (std::uint64_t c : partial) row.members += c;
  return row;
}

void WriteCensusCsv(std::ostream& out, const std::vector<CensusRow>& rows) {
  out << "length,members,header_classes\n";
  for (const CensusRow& r : rows) {
    out << r.length << ',' << r.members << ',' << r.header_classes << '\n';
  }
}

}  // namespace owflab
