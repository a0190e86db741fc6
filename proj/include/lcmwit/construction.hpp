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

#pragma once

// Witnesses for lcm{x..x+k-1} > C * lcm{y..y+k} with y > x + k.
//
// M = lcm{1..k}, m = its part over primes p with p*p <= k. Window primes are
// the p with sqrt(k) < p <= k. x is pinned to 1 mod m and y to 0 mod m; at a
// window prime x mod p must sit in [1, p - (k mod p)] and y mod p in
// [p - (k mod p), p]. Under those congruences
//
//   prod(y..y+k) / lcm{y..y+k} == M * prod(x..x+k-1) / lcm{x..x+k-1}
//
// and the lcm ratio collapses to M * prod(x+i) / prod(y+j), which the
// search drives above C.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcmwit/numtheory.hpp"

namespace lcmwit {

/// Closed integer interval.
struct Window {
  std::uint64_t lo;
  std::uint64_t hi;
  bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
};

struct WindowEntry {
  std::uint64_t p;
  std::uint64_t k_mod_p;
  Window a;  // [1, p - k mod p]
  Window b;  // [p - k mod p, p]
};

struct ResidueWindows {
  std::uint64_t k = 0;
  std::vector<WindowEntry> entries;  // increasing p

  const WindowEntry* find(std::uint64_t p) const;
};

ResidueWindows residue_windows(std::uint64_t k, const PrimeTable& table);

/// v mod p read in [1, p].
std::uint64_t window_residue(const BigInt& v, std::uint64_t p);

/// Two smallest primes in the open interval (k/2, (1+eps)k/2).
std::array<std::uint64_t, 2> select_y_primes(std::uint64_t k, const Rational& eps,
                                             const PrimeTable& table);
/// Three largest primes in the open interval ((1-eps)k, k).
std::array<std::uint64_t, 3> select_x_primes(std::uint64_t k, const Rational& eps,
                                             const PrimeTable& table);

struct SearchOptions {
  bool parallel = true;
  unsigned shards = 16;
};

struct YChoice {
  BigInt y;
  std::map<std::uint64_t, std::uint64_t> b_choices;  // every window prime
};

struct XChoice {
  BigInt x;
  std::map<std::uint64_t, std::uint64_t> a_choices;  // every window prime
};

/// Exact search range for y = t * M/(p1 p2):
///   M/(5C) (1 + 1/k) < y < M/(4C) - k.
struct YRange {
  BigInt stride;  // M / (p1 p2)
  BigInt t_first;
  BigInt t_last;  // empty when t_last < t_first
};
YRange y_search_range(std::uint64_t k, std::uint64_t C, std::uint64_t p1, std::uint64_t p2,
                      const FactoredValue& M);

/// Smallest valid y; throws ConstructionFailed when the range has none.
YChoice construct_y(std::uint64_t k, std::uint64_t C, std::uint64_t p1, std::uint64_t p2,
                    const ResidueWindows& windows, const FactoredValue& M, const FactoredValue& m,
                    const SearchOptions& opts = {});

/// Exact search range for x = 1 + s * M/(q1 q2 q3): y - M/(5Ck) < x < y.
struct XRange {
  BigInt stride;  // M / (q1 q2 q3)
  BigInt s_first;
  BigInt s_last;
};
XRange x_search_range(std::uint64_t k, std::uint64_t C, const BigInt& y,
                      const std::array<std::uint64_t, 3>& q, const FactoredValue& M);

/// Largest valid x below y; throws ConstructionFailed when none.
XChoice construct_x(std::uint64_t k, std::uint64_t C, const BigInt& y,
                    const std::array<std::uint64_t, 3>& q, const ResidueWindows& windows,
                    const FactoredValue& M, const FactoredValue& m,
                    const SearchOptions& opts = {});

struct PrimeCheck {
  std::uint64_t p;
  long long lhs;  // v_p(prod(y..y+k) / lcm{y..y+k})
  long long rhs;  // v_p(M * prod(x..x+k-1) / lcm{x..x+k-1})
  bool equal;
  friend bool operator==(const PrimeCheck&, const PrimeCheck&) = default;
};

struct BoundChain {
  Rational m_over_y_plus_k;   // M / (y+k)
  Rational x_over_y_pow_k;    // (x/y)^k
  Rational four_c_factor;     // 4C (k/(k+1))^k
  bool ratio_at_least_product = false;   // ratio >= M/(y+k) * (x/y)^k
  bool m_over_exceeds_4c = false;        // M/(y+k) > 4C
  bool power_exceeds = false;            // (x/y)^k > (k/(k+1))^k
  bool factor_exceeds_c = false;         // 4C (k/(k+1))^k > C

  bool holds() const {
    return ratio_at_least_product && m_over_exceeds_4c && power_exceeds && factor_exceeds_c;
  }
};

struct VerificationReport {
  std::uint64_t k = 0;
  std::vector<PrimeCheck> per_prime;  // every prime p <= k
  bool claim2_holds = false;
  std::optional<Rational> ratio;      // lcm{x..} / lcm{y..}, set by certify_ratio
  std::optional<BoundChain> bound_chain;
  bool ratio_exceeds_c = false;
  bool verdict = false;
};

/// Per-prime comparison of both sides of the valuation identity. Only x and
/// y modulo p^(floor(log_p k)+2) are consulted; primes above k cannot divide
/// two members of a (k+1)-element range and contribute 0 to both sides.
VerificationReport verify_claim2(const BigInt& x, const BigInt& y, std::uint64_t k,
                                 const PrimeTable& table);

/// Exact ratio M * prod(x+i) / prod(y+j) and the bound chain. Requires a
/// report on which the identity holds (throws Protocol otherwise).
void certify_ratio(VerificationReport& report, const BigInt& x, const BigInt& y,
                   std::uint64_t k, std::uint64_t C, const FactoredValue& M);

struct ConstructionConfig {
  Rational epsilon_start{1, 10};
  Rational epsilon_cap{1, 2};
  SearchOptions search;
};

struct WitnessCertificate {
  std::uint64_t k = 0;
  std::uint64_t C = 1;
  Rational epsilon;
  std::array<std::uint64_t, 2> y_primes{};
  std::array<std::uint64_t, 3> x_primes{};
  std::map<std::uint64_t, std::uint64_t> a_choices;
  std::map<std::uint64_t, std::uint64_t> b_choices;
  BigInt x;
  BigInt y;
  FactoredValue M;
  FactoredValue m;
  VerificationReport report;
  /// Canonical JSON text of the verification transcript (selection
  /// intervals, per-prime checks, ratio and bound chain). Stored alongside
  /// the fields it was derived from; verification recomputes and compares.
  std::string transcript;
};

/// Transcript for a certificate's fields and a report computed from them.
std::string certificate_transcript(const WitnessCertificate& cert,
                                   const VerificationReport& report);

/// Adaptive eps: starts at epsilon_start and doubles (capped) until both
/// prime selections succeed, then searches y, x and verifies.
WitnessCertificate construct_witness(std::uint64_t k, std::uint64_t C,
                                     const ConstructionConfig& config = {});

struct CertificateCheck {
  bool accepted = false;
  std::vector<std::string> failures;
  VerificationReport report;
};

/// Re-derives everything from the certificate's own fields; accepted only if
/// every stored value matches its recomputation and the witness is valid.
CertificateCheck verify_certificate(const WitnessCertificate& cert,
                                    std::uint64_t max_k = 1'000'000);

// Covering claim. Coefficients c_i range over [1, p_i]; z is representable
// when z == sum c_i w_i (mod P) with every c_i in B_i.

struct CoveringInstance {
  std::vector<std::uint64_t> primes;  // strictly increasing
  std::vector<std::uint64_t> weights;
  std::vector<std::vector<std::uint64_t>> admissible_sets;  // B_i, subsets of [1, p_i]
  Rational epsilon;
  std::uint64_t n = 0;
};

inline constexpr std::uint64_t kDefaultCoveringBound = 10'000'000;

/// Hypothesis violations (empty when all hold). `strict` selects
/// eps*sum(p) < n over eps*sum(p) <= n. Besides the literal covering
/// property, weights must satisfy w_i == 0 (mod P/p_i): without it the claim
/// has small counterexamples.
std::vector<std::string> claim1_violations(const CoveringInstance& inst, bool strict = true,
                                           std::uint64_t bound = kDefaultCoveringBound);

/// Least representable z in [window_start, window_start + n). Throws
/// ClaimCounterexample when the window has none.
BigInt claim1_find(const CoveringInstance& inst, const BigInt& window_start);

/// Brute force over all P windows. Throws Infeasible when P > bound.
bool claim1_verify_all_windows(const CoveringInstance& inst,
                               std::uint64_t bound = kDefaultCoveringBound);

/// Start (mod P) of the first uncovered window, if any.
std::optional<std::uint64_t> claim1_first_uncovered(const CoveringInstance& inst,
                                                    std::uint64_t bound = kDefaultCoveringBound);

}  // namespace lcmwit
