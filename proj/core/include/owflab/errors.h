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

#ifndef OWFLAB_ERRORS_H_
#define OWFLAB_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace owflab {

// Argument outside the mathematical domain of an operation (0 as a Gödel
// index, k > N in an urn draw, beta <= 2 where beta > 2 is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An exhaustive computation would exceed its configured enumeration budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Construction parameters that are individually valid but jointly unusable.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bit tape holds fewer unread bits than an operation needs. Nothing is
// consumed when this is thrown.
class TapeExhausted : public std::runtime_error {
 public:
  TapeExhausted(std::uint64_t needed, std::uint64_t available)
      : std::runtime_error("bit tape exhausted: need " +
                           std::to_string(needed) + " bits, " +
                           std::to_string(available) + " remain"),
        needed_(needed),
        available_(available) {}

  std::uint64_t needed() const { return needed_; }
  std::uint64_t available() const { return available_; }

 private:
  std::uint64_t needed_;
  std::uint64_t available_;
};

// A caller-supplied callback broke its documented contract.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace owflab

#endif  // OWFLAB_ERRORS_H_
