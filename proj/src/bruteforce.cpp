// Copyright 2026 The lcmwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcmwit/bruteforce.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "lcmwit/error.hpp"
#include "lcmwit/kernels.hpp"

namespace lcmwit {

namespace {

using u64 = std::uint64_t;

void check_bound(u64 top, const BruteOptions& opts) {
  if (top > opts.member_bound) {
    throw Error(ErrorKind::Infeasible, "search touches " + std::to_string(top) +
                                           ", above the member bound " + std::to_string(opts.member_bound));
  }
}

// Factorizations of 1..limit from a smallest-prime-factor sieve.
class SmallFactors {
 public:
  explicit SmallFactors(u64 limit) : spf_(limit + 1, 0) {
    for (u64 i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      for (u64 j = i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = i;
      }
    }
  }

  // lcm{n..n+width-1}
  FactoredValue window_lcm(u64 n, u64 width) const {
    FactoredValue out;
    for (u64 v = n; v < n + width; ++v) {
      u64 rest = v;
      while (rest > 1) {
        const u64 p = spf_[rest];
        std::uint32_t e = 0;
        while (rest % p == 0) {
          rest /= p;
          ++e;
        }
        out.raise_to(p, e);
      }
    }
    return out;
  }

 private:
  std::vector<u64> spf_;
};

}  // namespace

std::vector<FChainEntry> f_chain(u64 width, u64 n_max) {
  if (width < 2) throw Error(ErrorKind::Domain, "f_chain needs width >= 2");
  std::vector<FChainEntry> out;
  out.reserve(n_max);
  for (u64 n = 1; n <= n_max; ++n) {
    FChainEntry e{n, lcm_range(n, width), std::nullopt};
    if (!out.empty()) e.vs_previous = cmp_factored(e.value, out.back().value);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<AnomalyPair> search_anomalies(u64 k, u64 extra, u64 x_max, u64 y_max, const Rational& C,
                                          const BruteOptions& opts) {
  if (k < 1) throw Error(ErrorKind::Domain, "k must be >= 1");
  if (C <= 0) throw Error(ErrorKind::Domain, "C must be positive");
  const u64 large_width = k + extra;
  check_bound(std::max(x_max + k, y_max + large_width), opts);
  if (x_max < 1 || y_max <= k + 1) return {};

  const SmallFactors factors(std::max(x_max + k, y_max + large_width));
  const u64 y_first = k + 2;  // smallest y with y > x + k for x = 1
  std::vector<FactoredValue> small_f(x_max), large_f(y_max >= y_first ? y_max - y_first + 1 : 0);
  std::vector<BigInt> small(small_f.size()), large(large_f.size());
  const auto ns = static_cast<long>(small.size());
  const auto nl = static_cast<long>(large.size());
#pragma omp parallel for schedule(dynamic, 64) if (opts.parallel)
  for (long i = 0; i < ns; ++i) {
    small_f[i] = factors.window_lcm(1 + static_cast<u64>(i), k);
    small[i] = small_f[i].to_integer();
  }
#pragma omp parallel for schedule(dynamic, 64) if (opts.parallel)
  for (long j = 0; j < nl; ++j) {
    large_f[j] = factors.window_lcm(y_first + static_cast<u64>(j), large_width);
    large[j] = large_f[j].to_integer();
  }

  const auto pairs = opts.parallel
                         ? kernels::anomaly_pairs_omp(small, 1, large, y_first, k, C, y_max, opts.shards)
                         : kernels::anomaly_pairs_serial(small, 1, large, y_first, k, C, y_max);
  std::vector<AnomalyPair> out;
  out.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    out.push_back({k, x, y, extra, small_f[x - 1], large_f[y - y_first]});
  }
  return out;
}

TeaserAnswer answer_teaser() {
  TeaserAnswer t{lcm_range(676, 773 - 676 + 1), lcm_range(798, 903 - 798 + 1), Ordering::Equal};
  t.ordering = cmp_factored(t.first, t.second);
  return t;
}

MinimalitySummary minimality_scan(u64 extra, u64 k_max, u64 x_max, const BruteOptions& opts) {
  if (k_max < 2) throw Error(ErrorKind::Domain, "k_max must be >= 2");
  check_bound(x_max + k_max + extra, opts);
  MinimalitySummary out{extra, k_max, x_max, {}, std::nullopt};
  const SmallFactors factors(x_max + k_max + extra + 1);

  std::vector<MinimalRow> rows(k_max - 1);
  const auto nk = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
  for (long idx = 0; idx < nk; ++idx) {
    const u64 k = 2 + static_cast<u64>(idx);
    MinimalRow row{k, std::nullopt};
    if (x_max < 1) {
      rows[idx] = row;
      continue;
    }
    std::vector<FactoredValue> small(x_max + 1), large(x_max + 1);
    std::vector<long double> ls(x_max + 1), ll(x_max + 1), slack(x_max + 1);
    for (u64 v = 1; v <= x_max; ++v) {
      small[v] = factors.window_lcm(v, k);
      large[v] = factors.window_lcm(v, k + extra);
      ls[v] = small[v].log();
      ll[v] = large[v].log();
      slack[v] = 64 * LDBL_EPSILON * (ls[v] + ll[v] + 1);
    }
    // suffix minimum of the large-window logs
    std::vector<long double> suffix(x_max + 2, std::numeric_limits<long double>::infinity());
    for (u64 v = x_max; v >= 1; --v) suffix[v] = std::min(suffix[v + 1], ll[v]);
    for (u64 x = 1; x <= x_max && !row.least; ++x) {
      const u64 y0 = x + k + 1;
      if (y0 > x_max) break;
      if (ls[x] + slack[x] < suffix[y0] - slack[x]) continue;
      for (u64 y = y0; y <= x_max; ++y) {
        if (ll[y] > ls[x] + slack[x]) continue;
        if (cmp_factored(small[x], large[y]) == Ordering::Greater) {
          row.least = std::make_pair(x, y);
          break;
        }
      }
    }
    rows[idx] = std::move(row);
  }
  out.rows = std::move(rows);
  for (const auto& r : out.rows) {
    if (r.least) {
      out.least_k = r.k;
      break;
    }
  }
  return out;
}

BigInt lcm_fold(const BigInt& n, u64 width) {
  if (n < 1 || width < 1) throw Error(ErrorKind::Domain, "lcm_fold needs n >= 1, width >= 1");
  BigInt acc = 1;
  for (u64 i = 0; i < width; ++i) {
    BigInt v = n + from_u64(i);
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_mpz_t());
  }
  return acc;
}

BigInt product_range(const BigInt& n, u64 width) {
  BigInt acc = 1;
  for (u64 i = 0; i < width; ++i) acc *= n + from_u64(i);
  return acc;
}

Claim2Sides claim2_oracle(const BigInt& x, const BigInt& y, u64 k) {
  if (x < 1 || y < 1 || k < 1) throw Error(ErrorKind::Domain, "claim2_oracle needs x, y, k >= 1");
  const BigInt M = lcm_fold(BigInt(1), k);
  Claim2Sides s;
  const BigInt ly = lcm_fold(y, k + 1);
  const BigInt lx = lcm_fold(x, k);
  s.lhs = product_range(y, k + 1) / ly;
  s.rhs = M * product_range(x, k) / lx;
  return s;
}

}  // namespace lcmwit
