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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcmwit/rational.hpp"

namespace lcmwit {

enum class Ordering { Less, Equal, Greater };

std::string_view to_string(Ordering ord);

/// All primes up to `limit`, by a plain sieve of Eratosthenes.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  bool is_prime(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

PrimeTable sieve_primes(std::uint64_t limit);

/// Interval endpoint that is either a rational r or sqrt(r). Membership tests
/// against sqrt endpoints square the prime instead of taking roots.
struct Endpoint {
  Rational value;
  bool is_sqrt = false;

  static Endpoint at(const Rational& v) { return {v, false}; }
  static Endpoint sqrt_of(const Rational& v) { return {v, true}; }
};

/// Primes p with lo < p (or <=) and p < hi (or <=), increasing.
std::vector<std::uint64_t> primes_in(const Endpoint& lo, const Endpoint& hi,
                                     bool lo_strict, bool hi_strict,
                                     const PrimeTable& table);

/// Sparse prime -> exponent map. The empty map is 1.
class FactoredValue {
 public:
  using Map = std::map<std::uint64_t, std::uint32_t>;

  FactoredValue() = default;

  /// Validates that every key is prime and every exponent positive.
  static FactoredValue from_factors(Map factors);
  /// Trusted constructor for internal callers that already hold primes.
  static FactoredValue from_prime_power(std::uint64_t p, std::uint32_t e);

  const Map& factors() const noexcept { return factors_; }
  std::uint32_t exponent(std::uint64_t p) const;
  bool is_one() const noexcept { return factors_.empty(); }

  BigInt to_integer() const;
  std::string to_decimal() const { return to_integer().get_str(); }
  /// "2^3 * 3^2 * 5"
  std::string pretty() const;
  /// Natural log of the value, long double precision.
  long double log() const;

  FactoredValue& operator*=(const FactoredValue& other);
  friend FactoredValue operator*(FactoredValue a, const FactoredValue& b) {
    a *= b;
    return a;
  }
  /// Exponent-wise max / min.
  static FactoredValue lcm(const FactoredValue& a, const FactoredValue& b);
  static FactoredValue gcd(const FactoredValue& a, const FactoredValue& b);
  bool divides(const FactoredValue& other) const;

  /// Raise exponent of p to max(current, e); no primality check.
  void raise_to(std::uint64_t p, std::uint32_t e);

  friend bool operator==(const FactoredValue&, const FactoredValue&) = default;

 private:
  Map factors_;
};

/// A pairwise-coprime congruence system. Construction rejects non-coprime
/// moduli, moduli < 2, and residues outside [0, modulus).
class ResidueSystem {
 public:
  struct Congruence {
    BigInt modulus;
    BigInt residue;
  };

  explicit ResidueSystem(std::vector<Congruence> congruences);

  const std::vector<Congruence>& congruences() const noexcept { return congruences_; }
  const BigInt& combined_modulus() const noexcept { return combined_; }

 private:
  std::vector<Congruence> congruences_;
  BigInt combined_;
};

/// Largest e with p^e | n. n >= 1, p >= 2.
unsigned vp(const BigInt& n, std::uint64_t p);
unsigned vp(std::uint64_t n, std::uint64_t p);

/// floor(log_p k) by integer comparison of powers.
unsigned floor_log(std::uint64_t p, std::uint64_t k);

/// p^floor(log_p k).
FactoredValue max_prime_power_le(std::uint64_t p, std::uint64_t k);

/// lcm{1..k} = prod over p <= k of p^floor(log_p k).
FactoredValue big_M(std::uint64_t k, const PrimeTable& table);

/// The part of big_M over primes with p*p <= k.
FactoredValue small_m(std::uint64_t k, const PrimeTable& table);

/// Default bound on range members for direct factoring.
inline constexpr std::uint64_t kDefaultLcmBound = std::uint64_t{1} << 63;

/// lcm{n, ..., n+width-1}, by factoring every member. Members above `bound`
/// are rejected as infeasible.
FactoredValue lcm_range(std::uint64_t n, std::uint64_t width,
                        std::uint64_t bound = kDefaultLcmBound);

/// Unique z in [0, combined_modulus) solving the system.
BigInt crt(const ResidueSystem& system);

/// Exact comparison. Uses a log-sum filter with an explicit error bound and
/// falls back to big-integer comparison of a/g and b/g (g = gcd) when the
/// logs are too close to call.
Ordering cmp_factored(const FactoredValue& a, const FactoredValue& b);

/// Full factorization of n >= 1 (trial division, Miller-Rabin, Brent rho).
FactoredValue factor_u64(std::uint64_t n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

}  // namespace lcmwit
