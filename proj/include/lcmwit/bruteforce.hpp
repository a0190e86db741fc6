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

// Exhaustive small-scale searches over lcm{x..x+k-1} vs lcm{y..y+k+extra-1},
// plus direct-computation oracles (gcd folds, plain products) that share no
// code path with the factored and residue-based machinery.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lcmwit/numtheory.hpp"

namespace lcmwit {

struct BruteOptions {
  bool parallel = true;
  unsigned shards = 16;
  /// Largest range member the searches will touch.
  std::uint64_t member_bound = 100'000'000;
};

struct AnomalyPair {
  std::uint64_t k;
  std::uint64_t x;
  std::uint64_t y;
  std::uint64_t extra;
  FactoredValue lcm_small;  // lcm{x..x+k-1}
  FactoredValue lcm_large;  // lcm{y..y+k+extra-1}
};

struct FChainEntry {
  std::uint64_t n;
  FactoredValue value;
  /// f(n) relative to f(n-1); empty for n = 1.
  std::optional<Ordering> vs_previous;
};

/// f(n) = lcm{n..n+width-1} for n = 1..n_max.
std::vector<FChainEntry> f_chain(std::uint64_t width, std::uint64_t n_max);

/// Every (x, y) with 1 <= x <= x_max, x + k < y <= y_max and
/// lcm{x..x+k-1} > C * lcm{y..y+k+extra-1}, ordered by (x, y).
std::vector<AnomalyPair> search_anomalies(std::uint64_t k, std::uint64_t extra,
                                          std::uint64_t x_max, std::uint64_t y_max,
                                          const Rational& C, const BruteOptions& opts = {});

struct TeaserAnswer {
  FactoredValue first;   // lcm{676..773}
  FactoredValue second;  // lcm{798..903}
  Ordering ordering;     // first relative to second
};

TeaserAnswer answer_teaser();

struct MinimalRow {
  std::uint64_t k;
  /// least x admitting an anomaly, with the least y for that x
  std::optional<std::pair<std::uint64_t, std::uint64_t>> least;
};

struct MinimalitySummary {
  std::uint64_t extra;
  std::uint64_t k_max;
  std::uint64_t x_max;
  std::vector<MinimalRow> rows;  // k = 2..k_max
  std::optional<std::uint64_t> least_k;
};

/// For every k in [2, k_max], the least x <= x_max with some y in
/// (x+k, x_max] such that lcm{x..x+k-1} > lcm{y..y+k+extra-1}.
MinimalitySummary minimality_scan(std::uint64_t extra, std::uint64_t k_max, std::uint64_t x_max,
                                  const BruteOptions& opts = {});

/// lcm of [n, n+width) by repeated gcd-based lcm on big integers.
BigInt lcm_fold(const BigInt& n, std::uint64_t width);
BigInt product_range(const BigInt& n, std::uint64_t width);

struct Claim2Sides {
  BigInt lhs;  // prod(y..y+k) / lcm{y..y+k}
  BigInt rhs;  // lcm{1..k} * prod(x..x+k-1) / lcm{x..x+k-1}
};

/// Both sides of the valuation identity by direct computation.
Claim2Sides claim2_oracle(const BigInt& x, const BigInt& y, std::uint64_t k);

}  // namespace lcmwit
