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

#include "lcmwit/construction.hpp"

#include <algorithm>
#include <algorithm>
#include <set>

#include "lcmwit/error.hpp"
#include "lcmwit/kernels.hpp"

namespace lcmwit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

BigInt big(u64 v) { return from_u64(v); }

BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt cdiv(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

u64 mod_u64(const BigInt& v, u64 p) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), big(p).get_mpz_t());
  return to_u64(r);
}

std::optional<u64> scan(bool lowest, u64 first, u64 last,
                        std::span<const kernels::ProgressionWindow> windows,
                        const SearchOptions& opts) {
  if (opts.parallel) {
    return lowest ? kernels::first_hit_omp(first, last, windows, opts.shards)
                  : kernels::last_hit_omp(first, last, windows, opts.shards);
  }
  return lowest ? kernels::first_hit_serial(first, last, windows)
                : kernels::last_hit_serial(first, last, windows);
}

}  // namespace

const WindowEntry* ResidueWindows::find(u64 p) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), p,
                             [](const WindowEntry& e, u64 v) { return e.p < v; });
  return it != entries.end() && it->p == p ? &*it : nullptr;
}

ResidueWindows residue_windows(u64 k, const PrimeTable& table) {
  if (k < 4) throw Error(ErrorKind::Domain, "residue windows need k >= 4");
  ResidueWindows out{k, {}};
  for (u64 p : primes_in(Endpoint::sqrt_of(Rational(big(k))), Endpoint::at(Rational(big(k))),
                         true, false, table)) {
    const u64 r = k % p;
    out.entries.push_back({p, r, {1, p - r}, {p - r, p}});
  }
  if (out.entries.empty()) {
    throw Error(ErrorKind::Domain, "no primes in (sqrt k, k] for k=" + std::to_string(k));
  }
  return out;
}

u64 window_residue(const BigInt& v, u64 p) {
  const u64 r = mod_u64(v, p);
  return r == 0 ? p : r;
}

std::array<u64, 2> select_y_primes(u64 k, const Rational& eps, const PrimeTable& table) {
  if (eps <= 0) throw Error(ErrorKind::Domain, "epsilon must be positive");
  const Rational half(big(k), 2);
  const auto found = primes_in(Endpoint::at(half), Endpoint::at(half * (1 + eps)), true, true, table);
  if (found.size() < 2) {
    throw Error(ErrorKind::SelectionFailed,
                "fewer than 2 primes in (k/2, (1+eps)k/2) for k=" + std::to_string(k) +
                    ", eps=" + format_rational(eps));
  }
  return {found[0], found[1]};
}

std::array<u64, 3> select_x_primes(u64 k, const Rational& eps, const PrimeTable& table) {
  if (eps <= 0) throw Error(ErrorKind::Domain, "epsilon must be positive");
  const Rational kk(big(k));
  const auto found = primes_in(Endpoint::at(kk * (1 - eps)), Endpoint::at(kk), true, true, table);
  if (found.size() < 3) {
    throw Error(ErrorKind::SelectionFailed,
                "fewer than 3 primes in ((1-eps)k, k) for k=" + std::to_string(k) +
                    ", eps=" + format_rational(eps));
  }
  const auto n = found.size();
  return {found[n - 3], found[n - 2], found[n - 1]};
}

YRange y_search_range(u64 k, u64 C, u64 p1, u64 p2, const FactoredValue& M) {
  const BigInt Mi = M.to_integer();
  const BigInt pp = big(p1) * big(p2);
  if (Mi % pp != 0) throw Error(ErrorKind::Domain, "y primes must divide M");
  YRange r;
  r.stride = Mi / pp;
  const BigInt c = big(C), kk = big(k);
  // t*N > M(k+1)/(5Ck)
  r.t_first = fdiv(Mi * (kk + 1), 5 * c * kk * r.stride) + 1;
  // 4C t N < M - 4Ck
  r.t_last = cdiv(Mi - 4 * c * kk, 4 * c * r.stride) - 1;
  return r;
}

YChoice construct_y(u64 k, u64 C, u64 p1, u64 p2, const ResidueWindows& windows,
                    const FactoredValue& M, const FactoredValue& m, const SearchOptions& opts) {
  const WindowEntry* w1 = windows.find(p1);
  const WindowEntry* w2 = windows.find(p2);
  if (!w1 || !w2 || p1 == p2) throw Error(ErrorKind::Domain, "y primes must be distinct window primes");
  if (!m.divides(M)) throw Error(ErrorKind::Domain, "m must divide M");

  const YRange range = y_search_range(k, C, p1, p2, M);
  if (range.t_last < range.t_first || range.t_last < 1) {
    throw Error(ErrorKind::ConstructionFailed, "empty y interval for k=" + std::to_string(k) +
                                                   ", C=" + std::to_string(C));
  }
  const BigInt first = std::max(range.t_first, BigInt(1));
  const std::array<kernels::ProgressionWindow, 2> tests = {{
      {p1, 0, mod_u64(range.stride, p1), w1->b.lo, w1->b.hi},
      {p2, 0, mod_u64(range.stride, p2), w2->b.lo, w2->b.hi},
  }};
  const auto t = scan(true, to_u64(first), to_u64(range.t_last), tests, opts);
  if (!t) {
    throw Error(ErrorKind::ConstructionFailed,
                "no multiple of M/(p1 p2) in the y interval meets both residue windows (k=" +
                    std::to_string(k) + ", p1=" + std::to_string(p1) + ", p2=" + std::to_string(p2) + ")");
  }
  YChoice out;
  out.y = big(*t) * range.stride;
  for (const auto& e : windows.entries) out.b_choices[e.p] = window_residue(out.y, e.p);
  return out;
}

XRange x_search_range(u64 k, u64 C, const BigInt& y, const std::array<u64, 3>& q,
                      const FactoredValue& M) {
  const BigInt Mi = M.to_integer();
  const BigInt Q = big(q[0]) * big(q[1]) * big(q[2]);
  if (Mi % Q != 0) throw Error(ErrorKind::Domain, "x primes must divide M");
  XRange r;
  r.stride = Mi / Q;
  const BigInt f = 5 * big(C) * big(k);
  // 1 + sL > y - M/(5Ck)
  r.s_first = std::max(BigInt(fdiv(f * (y - 1) - Mi, f * r.stride) + 1), BigInt(0));
  // 1 + sL < y, and x < M
  r.s_last = std::min(BigInt(cdiv(y - 1, r.stride) - 1), BigInt(Q - 1));
  return r;
}

XChoice construct_x(u64 k, u64 C, const BigInt& y, const std::array<u64, 3>& q,
                    const ResidueWindows& windows, const FactoredValue& M, const FactoredValue& m,
                    const SearchOptions& opts) {
  std::array<kernels::ProgressionWindow, 3> tests{};
  const XRange range = x_search_range(k, C, y, q, M);
  for (std::size_t i = 0; i < 3; ++i) {
    const WindowEntry* w = windows.find(q[i]);
    if (!w) throw Error(ErrorKind::Domain, "x primes must be window primes");
    tests[i] = {q[i], 1, mod_u64(range.stride, q[i]), w->a.lo, w->a.hi};
  }
  if (q[0] == q[1] || q[1] == q[2] || q[0] == q[2]) throw Error(ErrorKind::Domain, "x primes must be distinct");
  if (!m.divides(M)) throw Error(ErrorKind::Domain, "m must divide M");
  if (range.s_last < range.s_first) {
    throw Error(ErrorKind::ConstructionFailed, "empty x interval below y for k=" + std::to_string(k));
  }
  const auto s = scan(false, to_u64(range.s_first), to_u64(range.s_last), tests, opts);
  if (!s) {
    throw Error(ErrorKind::ConstructionFailed,
                "no x = 1 + s*M/(q1 q2 q3) in (y - M/(5Ck), y) meets the three a-windows (k=" +
                    std::to_string(k) + ")");
  }
  XChoice out;
  out.x = 1 + big(*s) * range.stride;
  for (const auto& e : windows.entries) out.a_choices[e.p] = window_residue(out.x, e.p);
  return out;
}

namespace {

struct RangeValuation {
  long long sum = 0;
  long long max = 0;
};

// sum and max of v_p over [start, start+len), from start mod p^cap only.
// Valuations are capped at `cap`; at most one member can reach the cap when
// p^cap > len, so sum - max is exact.
RangeValuation range_valuation(const BigInt& start, u64 len, u64 p, unsigned cap) {
  u128 pw = 1;
  for (unsigned i = 0; i < cap; ++i) {
    pw *= p;
    if (pw >= (u128{1} << 63)) throw Error(ErrorKind::Infeasible, "p^cap exceeds 2^63");
  }
  const u64 modulus = static_cast<u64>(pw);
  const u64 r = mod_u64(start, modulus);
  RangeValuation out;
  u64 v = r;
  for (u64 j = 0; j < len; ++j) {
    long long e = v == 0 ? cap : vp(v, p);
    out.sum += e;
    out.max = std::max(out.max, e);
    if (++v == modulus) v = 0;
  }
  return out;
}

}  // namespace

VerificationReport verify_claim2(const BigInt& x, const BigInt& y, u64 k, const PrimeTable& table) {
  if (k < 4) throw Error(ErrorKind::Domain, "verify_claim2 needs k >= 4");
  if (x < 1 || y < 1) throw Error(ErrorKind::Domain, "verify_claim2 needs x, y >= 1");
  if (table.limit() < k) throw Error(ErrorKind::TableTooSmall, "prime table below k");
  VerificationReport rep;
  rep.k = k;
  rep.claim2_holds = true;
  for (u64 p : table.primes()) {
    if (p > k) break;
    const unsigned e = floor_log(p, k);
    const unsigned cap = e + 2;
    const auto ys = range_valuation(y, k + 1, p, cap);
    const auto xs = range_valuation(x, k, p, cap);
    PrimeCheck c{p, ys.sum - ys.max, static_cast<long long>(e) + xs.sum - xs.max, false};
    c.equal = c.lhs == c.rhs;
    rep.claim2_holds = rep.claim2_holds && c.equal;
    rep.per_prime.push_back(c);
  }
  rep.verdict = false;
  return rep;
}

void certify_ratio(VerificationReport& report, const BigInt& x, const BigInt& y, u64 k, u64 C,
                   const FactoredValue& M) {
  if (!report.claim2_holds) {
    throw Error(ErrorKind::Protocol, "certify_ratio called on a report where the valuation identity fails");
  }
  if (report.k != k) throw Error(ErrorKind::Protocol, "report was computed for a different k");
  const BigInt Mi = M.to_integer();
  BigInt num = Mi, den = 1;
  for (u64 i = 0; i < k; ++i) num *= x + big(i);
  for (u64 j = 0; j <= k; ++j) den *= y + big(j);
  Rational ratio(num, den);
  ratio.canonicalize();

  const Rational c(big(C));
  const Rational kk(big(k));
  BoundChain chain;
  chain.m_over_y_plus_k = Rational(Mi, y + big(k));
  chain.m_over_y_plus_k.canonicalize();
  Rational xy(x, y);
  xy.canonicalize();
  chain.x_over_y_pow_k = pow(xy, k);
  const Rational base = pow(Rational(big(k), big(k + 1)), k);
  chain.four_c_factor = 4 * c * base;
  chain.ratio_at_least_product = ratio >= chain.m_over_y_plus_k * chain.x_over_y_pow_k;
  chain.m_over_exceeds_4c = chain.m_over_y_plus_k > 4 * c;
  chain.power_exceeds = chain.x_over_y_pow_k > base;
  chain.factor_exceeds_c = chain.four_c_factor > c;

  report.ratio_exceeds_c = ratio > c;
  report.ratio = std::move(ratio);
  report.bound_chain = std::move(chain);
  report.verdict = report.claim2_holds && report.ratio_exceeds_c;
}

WitnessCertificate construct_witness(u64 k, u64 C, const ConstructionConfig& config) {
  if (k < 4) throw Error(ErrorKind::Domain, "construct_witness needs k >= 4");
  if (C < 1) throw Error(ErrorKind::Domain, "C must be >= 1");
  if (config.epsilon_start <= 0 || config.epsilon_start > config.epsilon_cap ||
      config.epsilon_cap > Rational(1, 2)) {
    throw Error(ErrorKind::Domain, "need 0 < epsilon_start <= epsilon_cap <= 1/2");
  }
  const PrimeTable table(k);
  const ResidueWindows windows = residue_windows(k, table);

  WitnessCertificate cert;
  cert.k = k;
  cert.C = C;
  cert.M = big_M(k, table);
  cert.m = small_m(k, table);

  Rational eps = config.epsilon_start;
  std::string last_failure;
  for (;;) {
    try {
      cert.y_primes = select_y_primes(k, eps, table);
      cert.x_primes = select_x_primes(k, eps, table);
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SelectionFailed) throw;
      last_failure = e.what();
    }
    if (eps >= config.epsilon_cap) {
      throw Error(ErrorKind::ConstructionFailed,
                  "prime selection failed up to eps cap " + format_rational(config.epsilon_cap) +
                      ": " + last_failure);
    }
    eps = std::min(Rational(eps * 2), config.epsilon_cap);
  }
  cert.epsilon = eps;

  auto yc = construct_y(k, C, cert.y_primes[0], cert.y_primes[1], windows, cert.M, cert.m, config.search);
  auto xc = construct_x(k, C, yc.y, cert.x_primes, windows, cert.M, cert.m, config.search);
  cert.y = std::move(yc.y);
  cert.b_choices = std::move(yc.b_choices);
  cert.x = std::move(xc.x);
  cert.a_choices = std::move(xc.a_choices);

  if (cert.y - cert.x <= big(k)) {
    throw Error(ErrorKind::ConstructionFailed, "y - x <= k: m - 1 is not above k at k=" + std::to_string(k));
  }
  cert.report = verify_claim2(cert.x, cert.y, k, table);
  if (!cert.report.claim2_holds) {
    throw Error(ErrorKind::ConstructionFailed, "valuation identity failed on constructed pair");
  }
  certify_ratio(cert.report, cert.x, cert.y, k, C, cert.M);
  if (!cert.report.verdict || !cert.report.bound_chain->holds()) {
    throw Error(ErrorKind::ConstructionFailed, "constructed pair does not certify ratio > C with the bound chain");
  }
  cert.transcript = certificate_transcript(cert, cert.report);
  return cert;
}

// Covering claim

namespace {

u64 product_checked(const std::vector<u64>& primes, u64 bound) {
  u128 P = 1;
  for (u64 p : primes) {
    P *= p;
    if (P > bound) throw Error(ErrorKind::Infeasible, "P exceeds covering scan bound");
  }
  return static_cast<u64>(P);
}

void check_shape(const CoveringInstance& inst) {
  const auto r = inst.primes.size();
  if (r == 0 || inst.weights.size() != r || inst.admissible_sets.size() != r) {
    throw Error(ErrorKind::Domain, "covering instance needs matching primes/weights/sets");
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (!is_prime_u64(inst.primes[i])) throw Error(ErrorKind::Domain, "covering modulus is not prime");
    if (i > 0 && inst.primes[i] <= inst.primes[i - 1]) throw Error(ErrorKind::Domain, "primes must increase");
    for (u64 c : inst.admissible_sets[i]) {
      if (c < 1 || c > inst.primes[i]) throw Error(ErrorKind::Domain, "B_i must lie in [1, p_i]");
    }
  }
}

// Bitmap over Z/P of representable residues, enumerating every coefficient
// combination with c_i in B_i.
std::vector<bool> representable(const CoveringInstance& inst, u64 P,
                                const std::vector<std::vector<u64>>& sets) {
  std::vector<bool> hit(P, false);
  const auto r = sets.size();
  std::vector<std::size_t> idx(r, 0);
  for (const auto& s : sets) {
    if (s.empty()) return hit;
  }
  for (;;) {
    u128 z = 0;
    for (std::size_t i = 0; i < r; ++i) z += static_cast<u128>(sets[i][idx[i]]) * (inst.weights[i] % P);
    hit[static_cast<u64>(z % P)] = true;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] + 1 == sets[i - 1].size()) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = 0;
  }
  return hit;
}

std::vector<std::vector<u64>> deduped_sets(const CoveringInstance& inst) {
  std::vector<std::vector<u64>> sets;
  for (const auto& b : inst.admissible_sets) {
    std::set<u64> s(b.begin(), b.end());
    sets.emplace_back(s.begin(), s.end());
  }
  return sets;
}

}  // namespace

std::vector<std::string> claim1_violations(const CoveringInstance& inst, bool strict, u64 bound) {
  check_shape(inst);
  std::vector<std::string> out;
  const u64 P = product_checked(inst.primes, bound);
  const auto sets = deduped_sets(inst);

  if (inst.epsilon < 0) out.push_back("epsilon is negative");
  u64 psum = 0;
  for (std::size_t i = 0; i < inst.primes.size(); ++i) {
    const u64 p = inst.primes[i];
    psum += p;
    if (Rational(big(sets[i].size())) < (1 - inst.epsilon) * Rational(big(p))) {
      out.push_back("|B_" + std::to_string(i + 1) + "| < (1-eps) p_" + std::to_string(i + 1));
    }
    if (inst.weights[i] % (P / p) != 0 || inst.weights[i] % p == 0) {
      out.push_back("w_" + std::to_string(i + 1) + " is not of CRT shape (0 mod P/p_i, nonzero mod p_i)");
    }
  }
  const Rational lhs = inst.epsilon * Rational(big(psum));
  const Rational n(big(inst.n));
  if (strict ? !(lhs < n) : !(lhs <= n)) {
    out.push_back(strict ? "eps * sum(p_i) < n fails" : "eps * sum(p_i) <= n fails");
  }
  if (inst.n < 1 || inst.n > inst.primes.front()) out.push_back("n must lie in [1, p_1]");

  std::vector<std::vector<u64>> all;
  for (u64 p : inst.primes) {
    std::vector<u64> v(p);
    for (u64 c = 1; c <= p; ++c) v[c - 1] = c;
    all.push_back(std::move(v));
  }
  const auto cover = representable(inst, P, all);
  if (std::find(cover.begin(), cover.end(), false) != cover.end()) {
    out.push_back("combinations over 0 < c_i <= p_i do not reach every residue mod P");
  }
  return out;
}

std::optional<u64> claim1_first_uncovered(const CoveringInstance& inst, u64 bound) {
  check_shape(inst);
  const u64 P = product_checked(inst.primes, bound);
  if (inst.n < 1) throw Error(ErrorKind::Domain, "n must be >= 1");
  const auto hit = representable(inst, P, deduped_sets(inst));
  // distance from each residue to the next representable one, cyclically
  std::optional<u64> any;
  for (u64 z = 0; z < P; ++z) {
    if (hit[z]) {
      any = z;
      break;
    }
  }
  if (!any) return 0;
  if (inst.n >= P) return std::nullopt;
  // sweep backwards twice around the circle tracking the next hit
  u64 next = *any + 2 * P;  // positions on an unrolled double circle
  std::vector<u64> dist(P);
  for (u64 step = 0; step < 2 * P; ++step) {
    const u64 pos = 2 * P - 1 - step;
    const u64 z = pos % P;
    if (hit[z]) next = pos;
    if (pos < P) dist[z] = next - pos;
  }
  for (u64 z = 0; z < P; ++z) {
    if (dist[z] >= inst.n) return z;
  }
  return std::nullopt;
}

bool claim1_verify_all_windows(const CoveringInstance& inst, u64 bound) {
  return !claim1_first_uncovered(inst, bound).has_value();
}

BigInt claim1_find(const CoveringInstance& inst, const BigInt& window_start) {
  check_shape(inst);
  const u64 P = product_checked(inst.primes, kDefaultCoveringBound);
  const auto hit = representable(inst, P, deduped_sets(inst));
  const u64 base = mod_u64(window_start, P);
  for (u64 i = 0; i < inst.n; ++i) {
    if (hit[(base + i) % P]) return window_start + big(i);
  }
  throw Error(ErrorKind::ClaimCounterexample,
              "no representable element in [" + window_start.get_str() + ", +" + std::to_string(inst.n) + ")");
}

}  // namespace lcmwit
