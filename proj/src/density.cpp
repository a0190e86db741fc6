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

#include "lcmwit/density.hpp"

#include <algorithm>
#include <cmath>

#include "lcmwit/error.hpp"
#include "lcmwit/kernels.hpp"

namespace lcmwit {

namespace {

using u64 = std::uint64_t;

bool fits_period(const BigInt& Mq) { return mpz_sizeinbase(Mq.get_mpz_t(), 2) <= 62; }

// r < p^(1 - delta), exactly
bool below_power(u64 r, u64 p, const Rational& one_minus_delta) {
  if (r == 0) return true;
  return compare_rational_power(from_u64(p), one_minus_delta, Rational(from_u64(r))) > 0;
}

}  // namespace

std::string_view to_string(GapMethod m) {
  switch (m) {
    case GapMethod::Auto: return "auto";
    case GapMethod::CrtEnumeration: return "crt-enumeration";
    case GapMethod::ExhaustiveScan: return "exhaustive-scan";
  }
  return "?";
}

SieveInstance build_instance(u64 k, const Rational& delta, const PrimeTable& table) {
  if (k < 6) throw Error(ErrorKind::Domain, "density instances need k >= 6");
  if (delta <= 0 || delta >= 1) throw Error(ErrorKind::Domain, "delta must lie in (0, 1)");
  SieveInstance inst;
  inst.k = k;
  inst.delta = delta;
  const Rational kk(from_u64(k));
  inst.primes = primes_in(Endpoint::sqrt_of(kk), Endpoint::at(kk), true, true, table);
  if (inst.primes.empty()) throw Error(ErrorKind::Domain, "no primes strictly between sqrt(k) and k");
  const Rational exponent = 1 - delta;
  inst.Mq = 1;
  for (u64 p : inst.primes) {
    inst.interval_sizes.push_back(to_u64(ceil_rational_power(from_u64(p), exponent)));
    inst.Mq *= from_u64(p);
  }
  return inst;
}

GapResult exact_max_gap(const SieveInstance& inst, const DensityOptions& opts) {
  BigInt count = 1;
  for (u64 s : inst.interval_sizes) count *= from_u64(s);
  if (!fits_period(inst.Mq)) throw Error(ErrorKind::Infeasible, "Mq above 2^62; exhaustive gap unavailable");
  const u64 period = to_u64(inst.Mq);

  GapMethod method = opts.method;
  if (method == GapMethod::Auto) {
    if (count <= from_u64(opts.enumeration_budget)) method = GapMethod::CrtEnumeration;
    else if (period <= opts.scan_budget) method = GapMethod::ExhaustiveScan;
    else throw Error(ErrorKind::Infeasible, "admissible set and period both exceed their budgets");
  }
  kernels::GapSummary g;
  if (method == GapMethod::CrtEnumeration) {
    if (count > from_u64(opts.enumeration_budget)) {
      throw Error(ErrorKind::Infeasible, "admissible set exceeds the enumeration budget");
    }
    g = kernels::admissible_gaps_crt_omp(inst.primes, inst.interval_sizes, opts.shards);
  } else {
    if (period > opts.scan_budget) throw Error(ErrorKind::Infeasible, "period exceeds the scan budget");
    g = kernels::admissible_gaps_scan_serial(inst.primes, inst.interval_sizes);
  }
  return {g.max_gap, g.admissible, method};
}

namespace {

DensityReport base_report(const SieveInstance& inst, const Rational& epsilon) {
  if (epsilon <= 0) throw Error(ErrorKind::Domain, "epsilon must be positive");
  DensityReport rep;
  rep.instance = inst;
  rep.epsilon = epsilon;
  rep.admissible_count = 1;
  for (u64 s : inst.interval_sizes) rep.admissible_count *= from_u64(s);
  rep.window = ceil_rational_power(inst.Mq, epsilon);
  for (std::size_t j = 0; j < inst.primes.size(); ++j) {
    const u64 p = inst.primes[j], s = inst.interval_sizes[j], r = inst.k % p;
    rep.per_prime.push_back({p, s, r, s <= p - r, s <= r});
  }
  return rep;
}

void apply_gap(DensityReport& rep, const std::optional<GapResult>& gap, std::optional<u64> lower) {
  if (gap) {
    rep.exhaustive = true;
    rep.max_gap = gap->max_gap;
    rep.method = gap->method;
    rep.verdict = from_u64(gap->max_gap) <= rep.window;
  } else {
    rep.exhaustive = false;
    rep.max_gap_lower_bound = lower;
    if (lower && from_u64(*lower) > rep.window) rep.verdict = false;
  }
}

std::optional<u64> sampled_lower_bound(const SieveInstance& inst, const DensityOptions& opts) {
  u64 length = opts.scan_budget;
  if (fits_period(inst.Mq)) length = std::min(length, to_u64(inst.Mq));
  const auto scan = kernels::admissible_prefix_scan(inst.primes, inst.interval_sizes, length);
  if (scan.admissible < 2) return std::nullopt;
  return scan.max_internal_gap;
}

struct GapOutcome {
  std::optional<GapResult> exact;
  std::optional<u64> lower;
};

GapOutcome gap_or_bound(const SieveInstance& inst, const DensityOptions& opts) {
  try {
    return {exact_max_gap(inst, opts), std::nullopt};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Infeasible) throw;
  }
  return {std::nullopt, sampled_lower_bound(inst, opts)};
}

}  // namespace

DensityReport probe_question(u64 k, const Rational& epsilon, const Rational& delta,
                             const PrimeTable& table, const DensityOptions& opts) {
  const SieveInstance inst = build_instance(k, delta, table);
  DensityReport rep = base_report(inst, epsilon);
  const auto g = gap_or_bound(inst, opts);
  apply_gap(rep, g.exact, g.lower);
  return rep;
}

std::vector<DensityReport> probe_sweep(u64 k, const std::vector<Rational>& deltas,
                                       const std::vector<Rational>& epsilons, const PrimeTable& table,
                                       const DensityOptions& opts) {
  std::vector<DensityReport> out;
  for (const auto& delta : deltas) {
    const SieveInstance inst = build_instance(k, delta, table);
    const auto g = gap_or_bound(inst, opts);
    for (const auto& eps : epsilons) {
      DensityReport rep = base_report(inst, eps);
      apply_gap(rep, g.exact, g.lower);
      out.push_back(std::move(rep));
    }
  }
  return out;
}

BadPrimeStats bad_prime_stats(u64 k, const Rational& delta, const PrimeTable& table) {
  if (k < 6) throw Error(ErrorKind::Domain, "bad_prime_stats needs k >= 6");
  if (delta <= 0 || delta >= 1) throw Error(ErrorKind::Domain, "delta must lie in (0, 1)");
  BadPrimeStats s;
  s.k = k;
  s.delta = delta;
  const Rational kk(from_u64(k));
  s.primes = primes_in(Endpoint::sqrt_of(kk), Endpoint::at(kk), true, true, table);
  const Rational exponent = 1 - delta;
  for (u64 p : s.primes) {
    const u64 r = k % p;
    // k mod p < p^(1-delta)  or  p - (k mod p) < p^(1-delta)
    const bool bad = below_power(r, p, exponent) || below_power(p - r, p, exponent);
    (bad ? s.bad_primes : s.good_primes).push_back(p);
  }
  s.fraction = s.primes.empty() ? Rational(0)
                                : Rational(from_u64(s.bad_primes.size()), from_u64(s.primes.size()));
  s.fraction.canonicalize();
  return s;
}

GoodK select_good_k(u64 K, const Rational& delta, const PrimeTable& table) {
  if (K < 8) throw Error(ErrorKind::Domain, "select_good_k needs K >= 8");
  if (table.limit() < 2 * K) throw Error(ErrorKind::TableTooSmall, "prime table below 2K");
  std::vector<BadPrimeStats> all(K);
  const auto n = static_cast<long>(K);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) all[i] = bad_prime_stats(K + static_cast<u64>(i), delta, table);

  GoodK g;
  g.K = K;
  Rational sum = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    sum += all[i].fraction;
    if (all[i].fraction < all[best].fraction) best = i;
  }
  g.k = K + best;
  g.stats = all[best];
  g.average_fraction = sum / Rational(from_u64(K));
  g.average_fraction.canonicalize();
  const double d = delta.get_d();
  g.averaging_bound = 7.0 * std::pow(static_cast<double>(K), -d / 2);
  if (g.stats.fraction == 0) {
    g.within_averaging_bound = true;
  } else {
    // fraction <= 7 K^(-delta/2)  <=>  K^(-delta/2) >= fraction/7
    g.within_averaging_bound =
        compare_rational_power(from_u64(K), -delta / 2, g.stats.fraction / 7) >= 0;
  }
  return g;
}

ReductionComponents reduction_bound_components(u64 k, const Rational& epsilon, const std::vector<u64>& good,
                                               const std::vector<u64>& bad, const PrimeTable& table) {
  if (epsilon <= 0) throw Error(ErrorKind::Domain, "epsilon must be positive");
  const Rational kk(from_u64(k));
  const auto primes = primes_in(Endpoint::sqrt_of(kk), Endpoint::at(kk), true, true, table);
  std::vector<u64> joined = good;
  joined.insert(joined.end(), bad.begin(), bad.end());
  std::sort(joined.begin(), joined.end());
  if (joined != primes) throw Error(ErrorKind::Domain, "good and bad sets must partition the primes in (sqrt k, k)");

  ReductionComponents c;
  c.epsilon = epsilon;
  c.good_product = 1;
  c.bad_product = 1;
  for (u64 p : good) c.good_product *= from_u64(p);
  for (u64 p : bad) c.bad_product *= from_u64(p);
  c.Mq = c.good_product * c.bad_product;
  c.m = small_m(k, table).to_integer();
  c.bad_within = compare_rational_power(c.Mq, 2 * epsilon, Rational(c.bad_product)) >= 0;
  c.m_below = compare_rational_power(c.Mq, epsilon, Rational(c.m)) > 0;
  Rational ratio(c.good_product, c.m * c.bad_product);
  ratio.canonicalize();
  c.ratio_at_least = compare_rational_power(c.Mq, 1 - 5 * epsilon, ratio) <= 0;
  return c;
}

}  // namespace lcmwit
