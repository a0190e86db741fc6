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

// 64-bit factorization: trial division by small primes, deterministic
// Miller-Rabin, and Brent's variant of Pollard rho for what is left.

#include <array>
#include <numeric>
#include <vector>

#include "lcmwit/error.hpp"
#include "lcmwit/numtheory.hpp"

namespace lcmwit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

constexpr std::array<u64, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

u64 rho(u64 n) {
  if (n % 2 == 0) return 2;
  // Brent cycle detection with batched gcds. Deterministic seeds.
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const u64 batch = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += batch) {
        ys = y;
        for (u64 i = 0; i < batch && i < r - k; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are deterministic for all n < 2^64.
  for (u64 a : kSmallPrimes) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FactoredValue factor_u64(u64 n) {
  if (n == 0) throw Error(ErrorKind::Domain, "cannot factor 0");
  FactoredValue::Map factors;
  for (u64 p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++factors[p];
      n /= p;
    }
  }
  if (n > 1) {
    std::vector<u64> rest;
    factor_into(n, rest);
    for (u64 p : rest) ++factors[p];
  }
  return FactoredValue::from_factors(std::move(factors));
}

}  // namespace lcmwit
