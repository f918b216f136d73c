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

#include "owflab/threshold.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "owflab/errors.h"
#include "owflab/log_gamma.h"

namespace owflab {
namespace {

constexpr long double kRoundGuard = 0x1p-30L;

// x (x-1) ... (x-k+1); zero once the product passes through 0.
mpz_class Falling(std::uint64_t x, std::uint64_t k) {
  if (k > x) return 0;
  mpz_class acc = 1;
  for (std::uint64_t j = 0; j < k; ++j) acc *= static_cast<unsigned long>(x - j);
  return acc;
}

void CheckUrn(std::uint64_t n, std::uint64_t good, std::uint64_t k) {
  if (good > n) throw DomainError("urn: good exceeds N");
  if (k > n) throw DomainError("urn: draw count exceeds N");
}

// n^e, or nullopt past 64 bits.
std::optional<std::uint64_t> CheckedPow(std::uint64_t n, unsigned e) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    acc *= n;
    if (acc > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

bool BollobasHolds(std::uint64_t n, std::uint64_t good, unsigned theta,
                   std::uint64_t m, std::uint64_t mstar,
                   BollobasRegime* regime) {
  const mpz_class miss = Falling(n - good, m);
  const mpz_class all = Falling(n, m);
  if (static_cast<unsigned __int128>(theta) * m <= mstar) {
    *regime = BollobasRegime::kBelow;
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), miss.get_mpz_t(), theta);
    mpz_pow_ui(rhs.get_mpz_t(), all.get_mpz_t(), theta);
    return 2 * lhs >= rhs;
  }
  if (static_cast<unsigned __int128>(m) >=
      static_cast<unsigned __int128>(theta) * (mstar + 1)) {
    *regime = BollobasRegime::kAbove;
    mpz_class scaled = miss;
    scaled <<= theta;
    return scaled <= all;
  }
  *regime = BollobasRegime::kBetween;
  return true;
}

template <typename Fn>
void ShardOverN(std::uint64_t n_lo, std::uint64_t n_hi, unsigned threads,
                Fn&& fn) {
  threads = std::max(1u, std::min(threads, 64u));
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t n = n_lo + t; n <= n_hi; n += threads) fn(n);
    });
  }
}

}  // namespace

mpq_class HitProbability(std::uint64_t n, std::uint64_t good, std::uint64_t k) {
  CheckUrn(n, good, k);
  mpq_class miss(Falling(n - good, k), Falling(n, k));
  miss.canonicalize();
  return 1 - miss;
}

mpq_class HitProbabilityBinomial(std::uint64_t n, std::uint64_t good,
                                 std::uint64_t k) {
  CheckUrn(n, good, k);
  mpz_class num, den;
  mpz_bin_uiui(num.get_mpz_t(), n - good, k);
  mpz_bin_uiui(den.get_mpz_t(), n, k);
  mpq_class miss(num, den);
  miss.canonicalize();
  return 1 - miss;
}

bool HitAtMostHalf(std::uint64_t n, std::uint64_t good, std::uint64_t k) {
  CheckUrn(n, good, k);
  return 2 * Falling(n - good, k) >= Falling(n, k);
}

std::uint64_t ExactThreshold(std::uint64_t n, std::uint64_t good) {
  CheckUrn(n, good, 0);
  if (good == 0) return n;
  if (good == n) return 0;
  // k = 0 always qualifies and k > N - good always hits. Gallop to the
  // first failing k, then bisect.
  const std::uint64_t cap = n - good + 1;
  std::uint64_t lo = 0;
  std::uint64_t hi = 1;
  while (hi < cap && HitAtMostHalf(n, good, hi)) {
    lo = hi;
    hi *= 2;
  }
  hi = std::min(hi, cap);
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (HitAtMostHalf(n, good, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

MuBounds ComputeMuBounds(std::uint64_t n, std::uint64_t good) {
  if (n < 2) throw DomainError("ComputeMuBounds: N must be >= 2");
  if (good < 1 || good > n) {
    throw DomainError("ComputeMuBounds: need 1 <= good <= N");
  }
  const long double nn = static_cast<long double>(n);
  const long double g = static_cast<long double>(good);
  const long double delta =
      (-std::log(2.0L) + LogFallingRatio(nn, g)) / g;
  const long double em1 = std::expm1(delta);
  MuBounds mu;
  mu.root = nn * std::exp(delta);
  // 1 + N - good - N e^delta, with the N ln N scale cancelled via expm1.
  mu.mu_lower = 1 - g - nn * em1;
  mu.mu_upper = -nn * em1;
  mu.lower_floor =
      static_cast<std::int64_t>(std::floor(mu.mu_lower - kRoundGuard));
  mu.lower = std::max<std::int64_t>(0, mu.lower_floor);
  mu.upper = static_cast<std::int64_t>(std::ceil(mu.mu_upper + kRoundGuard));
  return mu;
}

MuBounds ComputeMuBounds(std::uint64_t n, const mpq_class& p) {
  const mpq_class good = p * mpq_class(mpz_class(static_cast<unsigned long>(n)));
  if (good.get_den() != 1) throw DomainError("ComputeMuBounds: p*N not integral");
  if (good < 0 || !good.get_num().fits_ulong_p()) {
    throw DomainError("ComputeMuBounds: p out of range");
  }
  return ComputeMuBounds(n, good.get_num().get_ui());
}

ExactMuBounds ComputeExactMuBounds(std::uint64_t n, std::uint64_t good) {
  if (n < 2) throw DomainError("ComputeExactMuBounds: N must be >= 2");
  if (good < 1 || good > n) {
    throw DomainError("ComputeExactMuBounds: need 1 <= good <= N");
  }
  const mpz_class f = Falling(n, good);
  const auto g = static_cast<unsigned long>(good);
  // c^g <= F/2 iff c^g <= floor(F/2); c^g >= F/2 iff c^g >= ceil(F/2).
  const mpz_class half_down = f / 2;
  const mpz_class half_up = (f + 1) / 2;
  ExactMuBounds out;
  mpz_root(out.root_floor.get_mpz_t(), half_down.get_mpz_t(), g);
  if (mpz_root(out.root_ceil.get_mpz_t(), half_up.get_mpz_t(), g) == 0) {
    ++out.root_ceil;
  }
  const mpz_class nz(static_cast<unsigned long>(n));
  out.lower_floor = 1 + nz - static_cast<unsigned long>(good) - out.root_ceil;
  out.upper = nz - out.root_floor;
  return out;
}

DerivedConstants DeriveConstants(const mpq_class& beta) {
  if (beta <= 2) throw DomainError("DeriveConstants: beta must exceed 2");
  DerivedConstants c;
  c.alpha = 4 * beta / (beta - 2) + 2 * beta;
  c.gamma = (beta - 2) * (beta - 2) / (2 * beta);
  c.alpha.canonicalize();
  c.gamma.canonicalize();
  return c;
}

SamplerParams MakeSamplerParams(std::uint64_t n, unsigned beta, double d,
                                std::optional<mpq_class> alpha) {
  if (n < 1) throw DomainError("MakeSamplerParams: n must be >= 1");
  if (beta < 1) throw DomainError("MakeSamplerParams: beta must be >= 1");
  const auto urn = CheckedPow(n, 2 * beta);
  if (!urn) throw DomainError("MakeSamplerParams: n^(2 beta) exceeds 64 bits");
  SamplerParams p;
  p.n = n;
  p.beta = beta;
  p.urn = *urn;
  p.s = *CheckedPow(n, 2 * beta - 1);
  p.good_upper = *CheckedPow(n, beta);
  p.p_upper = mpq_class(mpz_class(static_cast<unsigned long>(p.good_upper)),
                        mpz_class(static_cast<unsigned long>(p.urn)));
  p.p_upper.canonicalize();
  p.p_lower = d * std::pow(static_cast<long double>(p.urn), 1.0L / beta) /
              static_cast<long double>(p.urn);
  if (alpha) {
    p.alpha = *alpha;
    p.alpha_overridden = true;
  } else if (beta > 2) {
    p.alpha = DeriveConstants(mpq_class(beta)).alpha;
  } else {
    p.alpha = kFallbackAlpha;
  }
  if (p.alpha <= 1) throw DomainError("MakeSamplerParams: alpha must exceed 1");
  p.mu_lower = p.urn >= 2 ? ComputeMuBounds(p.urn, p.good_upper).lower : 0;
  const DrawCount dc = ComputeDrawCount(p.urn, p.mu_lower, p.alpha);
  p.m = dc.m;
  p.degenerate = dc.degenerate;
  return p;
}

DrawCount ComputeDrawCount(std::uint64_t urn, std::int64_t mu,
                           const mpq_class& alpha) {
  if (mu <= 0) return {1, true};
  const long double scale =
      std::exp(-std::log(static_cast<long double>(urn)) /
               static_cast<long double>(alpha.get_d()));
  // Pull values a few ulps under an integer up to it; exact powers of N
  // otherwise floor one short.
  const long double x = static_cast<long double>(mu) * scale * (1 + 0x1p-40L);
  const auto m = static_cast<std::uint64_t>(std::floor(x));
  if (m < 1) return {1, true};
  return {m, false};
}

DrawCount ComputeDrawCountExact(std::uint64_t urn, std::int64_t mu,
                                const mpq_class& alpha) {
  if (mu <= 0) return {1, true};
  if (!alpha.get_num().fits_ulong_p() || !alpha.get_den().fits_ulong_p()) {
    throw DomainError("ComputeDrawCountExact: alpha too large");
  }
  const unsigned long a = alpha.get_num().get_ui();
  const unsigned long b = alpha.get_den().get_ui();
  mpz_class n_pow;
  mpz_ui_pow_ui(n_pow.get_mpz_t(), urn, b);
  mpz_class mu_pow;
  mpz_ui_pow_ui(mu_pow.get_mpz_t(), static_cast<unsigned long>(mu), a);
  // Largest m in [0, mu] with m^a N^b <= mu^a.
  std::uint64_t lo = 0;
  std::uint64_t hi = static_cast<std::uint64_t>(mu) + 1;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    mpz_class lhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), mid, a);
    if (lhs * n_pow <= mu_pow) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo < 1) return {1, true};
  return {lo, false};
}

BollobasVerdict BollobasCheck(std::uint64_t n, std::uint64_t good,
                              unsigned theta, std::uint64_t m) {
  if (theta == 0) throw DomainError("BollobasCheck: theta must be >= 1");
  CheckUrn(n, good, m);
  BollobasVerdict v;
  v.probability = HitProbability(n, good, m);
  v.holds = BollobasHolds(n, good, theta, m, ExactThreshold(n, good),
                          &v.regime);
  return v;
}

GridSummary BollobasGrid(std::uint64_t n_lo, std::uint64_t n_hi,
                         const std::vector<unsigned>& thetas,
                         unsigned threads) {
  for (unsigned t : thetas) {
    if (t == 0) throw DomainError("BollobasGrid: theta must be >= 1");
  }
  if (n_hi < n_lo) return {};
  std::vector<GridSummary> per_n(n_hi - n_lo + 1);
  ShardOverN(n_lo, n_hi, threads, [&](std::uint64_t n) {
    GridSummary& s = per_n[n - n_lo];
    for (std::uint64_t good = 1; good + 1 <= n; ++good) {
      const std::uint64_t mstar = ExactThreshold(n, good);
      for (unsigned theta : thetas) {
        BollobasRegime regime;
        ++s.checks;
        if (!BollobasHolds(n, good, theta, mstar / theta, mstar, &regime)) {
          ++s.violations;
        }
        const std::uint64_t above = static_cast<std::uint64_t>(theta) *
                                    (mstar + 1);
        if (above <= n) {
          ++s.checks;
          if (!BollobasHolds(n, good, theta, above, mstar, &regime)) {
            ++s.violations;
          }
        }
      }
    }
  });
  GridSummary total;
  for (const auto& s : per_n) {
    total.checks += s.checks;
    total.violations += s.violations;
  }
  return total;
}

std::vector<ThresholdRow> SandwichSweep(std::uint64_t n_lo, std::uint64_t n_hi,
                                        unsigned threads) {
  if (n_lo < 2) n_lo = 2;
  if (n_hi < n_lo) return {};
  std::vector<std::vector<ThresholdRow>> per_n(n_hi - n_lo + 1);
  ShardOverN(n_lo, n_hi, threads, [&](std::uint64_t n) {
    auto& rows = per_n[n - n_lo];
    for (std::uint64_t good = 1; good + 1 <= n; ++good) {
      ThresholdRow r;
      r.n = n;
      r.good = good;
      r.mstar = ExactThreshold(n, good);
      r.mu = ComputeMuBounds(n, good);
      r.pr_mstar = HitProbability(n, good, r.mstar);
      r.pr_next = HitProbability(n, good, r.mstar + 1);
      const auto ms = static_cast<std::int64_t>(r.mstar);
      r.sandwiched = r.mu.lower <= ms && ms <= r.mu.upper;
      rows.push_back(std::move(r));
    }
  });
  std::vector<ThresholdRow> out;
  for (auto& rows : per_n) {
    for (auto& r : rows) out.push_back(std::move(r));
  }
  return out;
}

void WriteThresholdCsv(std::ostream& out,
                       const std::vector<ThresholdRow>& rows) {
  out << "N,good,mstar,mu_lower,mu_upper,pr_mstar,pr_mstar_plus_1,"
         "mu_lower_real,mu_upper_real\n";
  char buf[200];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%llu,%llu,%llu,%lld,%lld,%.12g,%.12g,%.12Lg,%.12Lg\n",
                  static_cast<unsigned long long>(r.n),
                  static_cast<unsigned long long>(r.good),
                  static_cast<unsigned long long>(r.mstar),
                  static_cast<long long>(r.mu.lower_floor),
                  static_cast<long long>(r.mu.upper), r.pr_mstar.get_d(),
                  r.pr_next.get_d(), r.mu.mu_lower, r.mu.mu_upper);
    out << buf;
  }
}

QuotientRatio ComputeQuotientRatio(std::uint64_t n, double d, unsigned beta,
                                   double alpha) {
  if (beta <= 2) throw DomainError("ComputeQuotientRatio: beta must exceed 2");
  if (n < 2) throw DomainError("ComputeQuotientRatio: n must be >= 2");
  if (!(d > 0)) throw DomainError("ComputeQuotientRatio: d must be positive");
  if (!(alpha > 1)) throw DomainError("ComputeQuotientRatio: alpha must exceed 1");
  const long double x = static_cast<long double>(n);
  const long double eps = d * std::pow(x, 3.0L - 2.0L * beta);
  if (1 - eps <= 0) {
    throw DomainError("ComputeQuotientRatio: Gamma argument 1 - eps <= 0");
  }
  const long double urn = std::pow(x, 2.0L * beta);
  const long double big_m = std::pow(x, static_cast<long double>(beta));
  const long double ln2 = std::log(2.0L);

  QuotientRatio q;
  q.a = std::exp((-ln2 + LogGammaShift(x, eps)) / eps);
  q.b = urn - big_m;
  const long double delta = (-ln2 + LogFallingRatio(urn, big_m)) / big_m;
  q.c = urn * std::exp(delta);
  q.c_over_urn = std::exp(delta);
  // 1 + B - C without forming B and C separately.
  q.denominator = 1 - big_m - urn * std::expm1(delta);
  q.ratio = std::pow(urn, 1.0L / alpha) * (1 + x - q.a) / q.denominator;
  const long double gamma =
      (beta - 2.0L) * (beta - 2.0L) / (2.0L * beta);
  q.scaled = q.ratio * std::pow(x, gamma);
  return q;
}

}  // namespace owflab
