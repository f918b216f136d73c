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

#include "owflab/log_gamma.h"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>

#include "owflab/errors.h"

namespace owflab {
namespace {

constexpr long double kDirectSumLimit = 65536.0L;

// lnGamma(x) - [(x-1/2) ln x - x + ln(2 pi)/2], three terms.
long double StirlingTail(long double x) {
  const long double r = 1.0L / x;
  const long double r2 = r * r;
  return r * (1.0L / 12 - r2 * (1.0L / 360 - r2 / 1260));
}

}  // namespace

long double LogFallingRatio(long double n, long double m) {
  if (!(n >= 1) || m < 0 || m > n) {
    throw DomainError("LogFallingRatio: need 0 <= M <= N, N >= 1");
  }
  if (m <= kDirectSumLimit) {
    long double s = 0;
    const auto count = static_cast<std::uint64_t>(m);
    for (std::uint64_t j = 1; j < count; ++j) {
      s += std::log1p(-static_cast<long double>(j) / n);
    }
    return s;
  }
  const long double a = n + 1;
  const long double b = n - m + 1;
  if (b < 16) {
    // The tail series is too coarse near the pole; take lnGamma(b) whole.
    return std::lgamma(a) - std::lgamma(b) - m * std::log(n);
  }
  return (a - 0.5L) * std::log1p(1.0L / n) -
         (b - 0.5L) * std::log1p((1.0L - m) / n) - m + StirlingTail(a) -
         StirlingTail(b);
}

long double LogGammaShift(long double x, long double eps) {
  if (!(x >= 1) || !(eps < x + 1)) {
    throw DomainError("LogGammaShift: Gamma argument not positive");
  }
  if (std::fabs(eps) < 1e-4L) {
    const long double y = x + 1;
    const long double psi2 = boost::math::polygamma(2, y);
    return eps * Digamma(y) - eps * eps * Trigamma(y) / 2 +
           eps * eps * eps * psi2 / 6;
  }
  return std::lgamma(x + 1) - std::lgamma(x + 1 - eps);
}

long double Digamma(long double x) { return boost::math::digamma(x); }
long double Trigamma(long double x) { return boost::math::trigamma(x); }

}  // namespace owflab
