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

#include "lcmwit/numtheory.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "lcmwit/error.hpp"

namespace lcmwit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// sign of (p compared to endpoint)
int compare_to_endpoint(u64 p, const Endpoint& end) {
  Rational lhs = end.is_sqrt ? Rational(from_u64(p) * from_u64(p)) : Rational(from_u64(p));
  int c = cmp(lhs, end.value);
  return (c > 0) - (c < 0);
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::TableTooSmall: return "table-too-small";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::InvalidSystem: return "invalid-system";
    case ErrorKind::SelectionFailed: return "selection-failed";
    case ErrorKind::ConstructionFailed: return "construction-failed";
    case ErrorKind::Protocol: return "protocol";
    case ErrorKind::ClaimCounterexample: return "claim-counterexample";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

std::string_view to_string(Ordering ord) {
  switch (ord) {
    case Ordering::Less: return "LESS";
    case Ordering::Equal: return "EQUAL";
    case Ordering::Greater: return "GREATER";
  }
  return "?";
}

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
  if (limit < 2) throw Error(ErrorKind::Domain, "sieve limit must be >= 2");
  if (limit > (u64{1} << 34)) throw Error(ErrorKind::Infeasible, "sieve limit too large");
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  for (u64 i = 2; i <= limit; ++i) {
    if (!composite[i]) primes_.push_back(i);
  }
}

bool PrimeTable::is_prime(u64 n) const {
  if (n > limit_) return is_prime_u64(n);
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

PrimeTable sieve_primes(u64 limit) { return PrimeTable(limit); }

std::vector<u64> primes_in(const Endpoint& lo, const Endpoint& hi, bool lo_strict,
                           bool hi_strict, const PrimeTable& table) {
  Rational limit(from_u64(table.limit()));
  Rational hi_linear = hi.value;
  if (hi.is_sqrt) limit *= limit;
  if (hi_linear > limit) {
    throw Error(ErrorKind::TableTooSmall, "prime table limit " + std::to_string(table.limit()) +
                                              " below interval end");
  }
  std::vector<u64> out;
  for (u64 p : table.primes()) {
    int c_hi = compare_to_endpoint(p, hi);
    if (c_hi > 0 || (hi_strict && c_hi == 0)) break;
    int c_lo = compare_to_endpoint(p, lo);
    if (c_lo < 0 || (lo_strict && c_lo == 0)) continue;
    out.push_back(p);
  }
  return out;
}

// FactoredValue

FactoredValue FactoredValue::from_factors(Map factors) {
  for (const auto& [p, e] : factors) {
    if (e == 0) throw Error(ErrorKind::Domain, "zero exponent for " + std::to_string(p));
    if (!is_prime_u64(p)) throw Error(ErrorKind::Domain, std::to_string(p) + " is not prime");
  }
  FactoredValue v;
  v.factors_ = std::move(factors);
  return v;
}

FactoredValue FactoredValue::from_prime_power(u64 p, std::uint32_t e) {
  FactoredValue v;
  if (e > 0) v.factors_[p] = e;
  return v;
}

std::uint32_t FactoredValue::exponent(u64 p) const {
  auto it = factors_.find(p);
  return it == factors_.end() ? 0 : it->second;
}

BigInt FactoredValue::to_integer() const {
  BigInt out = 1;
  BigInt pw;
  for (const auto& [p, e] : factors_) {
    mpz_pow_ui(pw.get_mpz_t(), from_u64(p).get_mpz_t(), e);
    out *= pw;
  }
  return out;
}

std::string FactoredValue::pretty() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : factors_) {
    if (!out.empty()) out += " * ";
    out += std::to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

long double FactoredValue::log() const {
  long double sum = 0;
  for (const auto& [p, e] : factors_) sum += static_cast<long double>(e) * std::log(static_cast<long double>(p));
  return sum;
}

FactoredValue& FactoredValue::operator*=(const FactoredValue& other) {
  for (const auto& [p, e] : other.factors_) factors_[p] += e;
  return *this;
}

FactoredValue FactoredValue::lcm(const FactoredValue& a, const FactoredValue& b) {
  FactoredValue out = a;
  for (const auto& [p, e] : b.factors_) out.raise_to(p, e);
  return out;
}

FactoredValue FactoredValue::gcd(const FactoredValue& a, const FactoredValue& b) {
  FactoredValue out;
  for (const auto& [p, e] : a.factors_) {
    std::uint32_t f = b.exponent(p);
    if (f > 0) out.factors_[p] = std::min(e, f);
  }
  return out;
}

bool FactoredValue::divides(const FactoredValue& other) const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [&](const auto& pe) { return other.exponent(pe.first) >= pe.second; });
}

void FactoredValue::raise_to(u64 p, std::uint32_t e) {
  if (e == 0) return;
  auto& slot = factors_[p];
  slot = std::max(slot, e);
}

// ResidueSystem

ResidueSystem::ResidueSystem(std::vector<Congruence> congruences)
    : congruences_(std::move(congruences)), combined_(1) {
  if (congruences_.empty()) throw Error(ErrorKind::InvalidSystem, "empty congruence system");
  for (std::size_t i = 0; i < congruences_.size(); ++i) {
    const auto& ci = congruences_[i];
    if (ci.modulus < 2) throw Error(ErrorKind::InvalidSystem, "modulus must be >= 2");
    if (ci.residue < 0 || ci.residue >= ci.modulus) {
      throw Error(ErrorKind::InvalidSystem, "residue " + ci.residue.get_str() +
                                                " outside [0, " + ci.modulus.get_str() + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      BigInt g = ::gcd(ci.modulus, congruences_[j].modulus);
      if (g != 1) {
        throw Error(ErrorKind::InvalidSystem, "moduli " + congruences_[j].modulus.get_str() +
                                                  " and " + ci.modulus.get_str() +
                                                  " share factor " + g.get_str());
      }
    }
    combined_ *= ci.modulus;
  }
}

// valuations and prime powers

unsigned vp(const BigInt& n, u64 p) {
  if (n < 1) throw Error(ErrorKind::Domain, "vp needs n >= 1");
  if (p < 2) throw Error(ErrorKind::Domain, "vp needs p >= 2");
  BigInt rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), from_u64(p).get_mpz_t()));
}

unsigned vp(u64 n, u64 p) {
  if (n < 1) throw Error(ErrorKind::Domain, "vp needs n >= 1");
  if (p < 2) throw Error(ErrorKind::Domain, "vp needs p >= 2");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

unsigned floor_log(u64 p, u64 k) {
  if (p < 2 || k < 1) throw Error(ErrorKind::Domain, "floor_log needs p >= 2, k >= 1");
  unsigned e = 0;
  u128 pw = p;
  while (pw <= k) {
    pw *= p;
    ++e;
  }
  return e;
}

FactoredValue max_prime_power_le(u64 p, u64 k) {
  if (p > k) throw Error(ErrorKind::Domain, "prime " + std::to_string(p) + " exceeds k=" + std::to_string(k));
  if (!is_prime_u64(p)) throw Error(ErrorKind::Domain, std::to_string(p) + " is not prime");
  return FactoredValue::from_prime_power(p, floor_log(p, k));
}

namespace {

FactoredValue prime_power_product(u64 k, const PrimeTable& table, bool only_small) {
  if (k < 2) throw Error(ErrorKind::Domain, "k must be >= 2");
  if (table.limit() < k) {
    throw Error(ErrorKind::TableTooSmall, "prime table limit " + std::to_string(table.limit()) +
                                              " < k=" + std::to_string(k));
  }
  FactoredValue out;
  for (u64 p : table.primes()) {
    if (p > k) break;
    if (only_small && static_cast<u128>(p) * p > k) break;
    out.raise_to(p, floor_log(p, k));
  }
  return out;
}

}  // namespace

FactoredValue big_M(u64 k, const PrimeTable& table) { return prime_power_product(k, table, false); }

FactoredValue small_m(u64 k, const PrimeTable& table) { return prime_power_product(k, table, true); }

FactoredValue lcm_range(u64 n, u64 width, u64 bound) {
  if (n < 1 || width < 1) throw Error(ErrorKind::Domain, "lcm_range needs n >= 1, width >= 1");
  if (n > bound || width - 1 > bound - n) {
    throw Error(ErrorKind::Infeasible, "range member exceeds lcm feasibility bound " + std::to_string(bound));
  }
  FactoredValue out;
  for (u64 i = 0; i < width; ++i) {
    const FactoredValue f = factor_u64(n + i);
    for (const auto& [p, e] : f.factors()) out.raise_to(p, e);
  }
  return out;
}

BigInt crt(const ResidueSystem& system) {
  const auto& cs = system.congruences();
  BigInt x = cs.front().residue;
  BigInt mod = cs.front().modulus;
  BigInt inv, t;
  for (std::size_t i = 1; i < cs.size(); ++i) {
    const auto& [m, r] = cs[i];
    // x + mod*t == r (mod m)
    if (mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), m.get_mpz_t()) == 0) {
      throw Error(ErrorKind::InvalidSystem, "non-invertible modulus in CRT");
    }
    t = (r - x) * inv;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
    x += mod * t;
    mod *= m;
  }
  mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  return x;
}

namespace {

// |computed log - true log| is below this for FactoredValue::log().
long double log_error_bound(const FactoredValue& v) {
  long double mag = 0;
  for (const auto& [p, e] : v.factors()) mag += static_cast<long double>(e) * std::log(static_cast<long double>(p));
  auto terms = static_cast<long double>(v.factors().size());
  return 8 * (terms + 2) * LDBL_EPSILON * (mag + 1);
}

}  // namespace

Ordering cmp_factored(const FactoredValue& a, const FactoredValue& b) {
  long double diff = a.log() - b.log();
  long double slack = log_error_bound(a) + log_error_bound(b);
  if (diff > slack) return Ordering::Greater;
  if (diff < -slack) return Ordering::Less;

  FactoredValue g = FactoredValue::gcd(a, b);
  FactoredValue ra, rb;
  for (const auto& [p, e] : a.factors()) {
    std::uint32_t r = e - g.exponent(p);
    if (r) ra.raise_to(p, r);
  }
  for (const auto& [p, e] : b.factors()) {
    std::uint32_t r = e - g.exponent(p);
    if (r) rb.raise_to(p, r);
  }
  int c = cmp(ra.to_integer(), rb.to_integer());
  return c > 0 ? Ordering::Greater : (c < 0 ? Ordering::Less : Ordering::Equal);
}

}  // namespace lcmwit
