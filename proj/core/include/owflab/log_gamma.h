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

#ifndef OWFLAB_LOG_GAMMA_H_
#define OWFLAB_LOG_GAMMA_H_

#include <cstdint>

namespace owflab {

// ln(N!/((N-M)! * N^M)) = sum_{j<M} log1p(-j/N), for 0 <= M <= N, N >= 1.
// Always <= 0. Summed directly for small M, otherwise a Stirling
// difference written in log1p form so that the N ln N terms never appear.
long double LogFallingRatio(long double n, long double m);

// ln Gamma(x+1) - ln Gamma(x+1-eps) for x >= 1 and eps < x + 1. Uses the
// polygamma series when eps is small so the difference keeps its relative
// precision; falls back to lgammal otherwise.
long double LogGammaShift(long double x, long double eps);

long double Digamma(long double x);
long double Trigamma(long double x);

}  // namespace owflab

#endif  // OWFLAB_LOG_GAMMA_H_
