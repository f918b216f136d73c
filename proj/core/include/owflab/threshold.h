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

#ifndef OWFLAB_THRESHOLD_H_
#define OWFLAB_THRESHOLD_H_

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace owflab {

// Pr(Q_k): probability that a uniform k-subset of an urn of N elements, of
// which `good` are marked, contains a marked one. Computed as
// 1 - prod_{j<k} (N-good-j)/(N-j). Throws DomainError for good > N or k > N.
mpq_class HitProbability(std::uint64_t n, std::uint64_t good, std::uint64_t k);

// Same value via 1 - C(N-good, k)/C(N, k) with GMP binomials.
mpq_class HitProbabilityBinomial(std::uint64_t n, std::uint64_t good,
                                 std::uint64_t k);

// Pr(Q_k) <= 1/2, decided in integers.
bool HitAtMostHalf(std::uint64_t n, std::uint64_t good, std::uint64_t k);

// max{k : Pr(Q_k) <= 1/2}. m*(N, 0) = N and m*(N, N) = 0.
std::uint64_t ExactThreshold(std::uint64_t n, std::uint64_t good);

// Closed-form bounds floor(1 + N - good - R) <= m* <= ceil(N - R) with
// R = (N!/(2 (N-good)!))^(1/good).
struct MuBounds {
  long double root = 0;        // R
  long double mu_lower = 0;    // 1 + N - good - R, unrounded
  long double mu_upper = 0;    // N - R, unrounded
  std::int64_t lower_floor = 0;  // floor(mu_lower), may be negative
  std::int64_t lower = 0;      // max(0, lower_floor)
  std::int64_t upper = 0;      // ceil(mu_upper)
};

// Log-Gamma evaluation; floor and ceil are taken after widening by 2^-30.
// Throws DomainError unless N >= 2 and 1 <= good <= N.
MuBounds ComputeMuBounds(std::uint64_t n, std::uint64_t good);
// Rational p; throws DomainError unless p*N is an integer.
MuBounds ComputeMuBounds(std::uint64_t n, const mpq_class& p);

// The rounded bounds evaluated exactly: ceil(R) and floor(R) are found as
// the extreme integers c with 2 c^good >= N!/(N-good)! resp. <= it.
struct ExactMuBounds {
  mpz_class root_floor;
  mpz_class root_ceil;
  mpz_class lower_floor;  // 1 + N - good - ceil(R)
  mpz_class upper;        // N - floor(R)
};
ExactMuBounds ComputeExactMuBounds(std::uint64_t n, std::uint64_t good);

struct DerivedConstants {
  mpq_class alpha;  // 4 beta/(beta - 2) + 2 beta
  mpq_class gamma;  // (beta - 2)^2/(2 beta)
};
// Throws DomainError for beta <= 2.
DerivedConstants DeriveConstants(const mpq_class& beta);

// Used when beta <= 2 and no override is supplied.
inline constexpr unsigned kFallbackAlpha = 8;

struct SamplerParams {
  std::uint64_t n = 0;
  unsigned beta = 0;
  mpq_class alpha;
  bool alpha_overridden = false;
  std::uint64_t urn = 0;        // N = n^(2 beta)
  std::uint64_t s = 0;          // n^(2 beta - 1)
  std::uint64_t good_upper = 0;  // n^beta = p_upper * N
  mpq_class p_upper;            // sqrt(N)/N
  long double p_lower = 0;      // d N^(1/beta)/N
  std::int64_t mu_lower = 0;    // clamped mu_*(N, p_upper)
  std::uint64_t m = 0;
  bool degenerate = false;      // the unclamped draw count was below 1
};

// Throws DomainError for n < 1, beta < 1, alpha <= 1 or N beyond 64 bits.
SamplerParams MakeSamplerParams(std::uint64_t n, unsigned beta, double d,
                                std::optional<mpq_class> alpha = std::nullopt);

struct DrawCount {
  std::uint64_t m = 0;
  bool degenerate = false;
};
// floor(N^(-1/alpha) * mu), clamped to >= 1, using long double powers.
DrawCount ComputeDrawCount(std::uint64_t urn, std::int64_t mu,
                           const mpq_class& alpha);
// The same floor taken exactly: with alpha = a/b, the largest m with
// m^a N^b <= mu^a.
DrawCount ComputeDrawCountExact(std::uint64_t urn, std::int64_t mu,
                                const mpq_class& alpha);

enum class BollobasRegime { kBelow, kAbove, kBetween };

struct BollobasVerdict {
  BollobasRegime regime = BollobasRegime::kBetween;
  bool holds = true;  // vacuous between regimes
  mpq_class probability;
};

// Below (theta m <= m*): Pr(Q_m) <= 1 - 2^(-1/theta), checked as
// (1 - Pr)^theta >= 1/2. Above (m >= theta (m* + 1)): Pr(Q_m) >= 1 - 2^-theta.
// Throws DomainError for theta = 0 or m > N.
BollobasVerdict BollobasCheck(std::uint64_t n, std::uint64_t good,
                              unsigned theta, std::uint64_t m);

struct GridSummary {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
};

// For every N in [n_lo, n_hi], good in [1, N-1] and theta in `thetas`,
// checks m = floor(m*/theta) and, when it fits the urn, m = theta (m* + 1).
GridSummary BollobasGrid(std::uint64_t n_lo, std::uint64_t n_hi,
                         const std::vector<unsigned>& thetas,
                         unsigned threads = 1);

struct ThresholdRow {
  std::uint64_t n = 0;
  std::uint64_t good = 0;
  std::uint64_t mstar = 0;
  MuBounds mu;
  mpq_class pr_mstar;
  mpq_class pr_next;
  bool sandwiched = true;
};

// Rows for N in [n_lo, n_hi] and good in [1, N-1], ordered by (N, good).
std::vector<ThresholdRow> SandwichSweep(std::uint64_t n_lo, std::uint64_t n_hi,
                                        unsigned threads = 1);
// mu_lower/mu_upper are the rounded bounds (the lower one unclamped); the
// unrounded values follow in the last two columns.
void WriteThresholdCsv(std::ostream& out, const std::vector<ThresholdRow>& rows);

// The quotient of the draw count over its thinned-urn counterpart, written
// as N^(1/alpha) (1 + n - A) / (1 + B - C) with N = n^(2 beta), M = n^beta,
// B = N - M, eps = d n^(3 - 2 beta), A = (Gamma(n+1)/(2 Gamma(n+1-eps)))^(1/eps)
// and C = (Gamma(N+1)/(2 Gamma(N-M+1)))^(1/M).
struct QuotientRatio {
  long double a = 0;
  long double b = 0;
  long double c = 0;
  long double c_over_urn = 0;  // C/N, which tends to 1
  long double denominator = 0;
  long double ratio = 0;
  long double scaled = 0;      // ratio * n^gamma
};

// Throws DomainError for beta <= 2, n < 2, d <= 0, or 1 - eps <= 0.
QuotientRatio ComputeQuotientRatio(std::uint64_t n, double d, unsigned beta,
                                   double alpha);

}  // namespace owflab

#endif  // OWFLAB_THRESHOLD_H_
