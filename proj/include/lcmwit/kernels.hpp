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

// Data-parallel search kernels. Every OpenMP kernel has a serial reference
// with the same contract; tests pin them against each other and the
// benchmark in bench/ compares their throughput. Results never depend on the
// shard count or thread count.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lcmwit/rational.hpp"

namespace lcmwit::kernels {

/// Residue test along an arithmetic progression. At step s the tested value
/// is (offset + s*stride) mod modulus, mapped into [1, modulus] with 0 read
/// as modulus; the test passes when that value lies in [lo, hi].
struct ProgressionWindow {
  std::uint64_t modulus;
  std::uint64_t offset;
  std::uint64_t stride;
  std::uint64_t lo;
  std::uint64_t hi;
};

/// Smallest s in [first, last] passing every window.
std::optional<std::uint64_t> first_hit_serial(std::uint64_t first, std::uint64_t last,
                                              std::span<const ProgressionWindow> windows);
std::optional<std::uint64_t> first_hit_omp(std::uint64_t first, std::uint64_t last,
                                           std::span<const ProgressionWindow> windows,
                                           unsigned shards);

/// Largest s in [first, last] passing every window.
std::optional<std::uint64_t> last_hit_serial(std::uint64_t first, std::uint64_t last,
                                             std::span<const ProgressionWindow> windows);
std::optional<std::uint64_t> last_hit_omp(std::uint64_t first, std::uint64_t last,
                                          std::span<const ProgressionWindow> windows,
                                          unsigned shards);

/// x is admissible when, for every j, x mod primes[j] (read in [1, p]) is at
/// most sizes[j].
struct GapSummary {
  std::uint64_t admissible = 0;
  std::uint64_t max_gap = 0;  // cyclic, over the period prod(primes)
};

/// Exhaustive walk of [0, prod(primes)). Product must be < 2^63.
GapSummary admissible_gaps_scan_serial(std::span<const std::uint64_t> primes,
                                       std::span<const std::uint64_t> sizes);

/// CRT enumeration of the admissible set, sharded by the residue of the last
/// prime, then sorted and merged.
std::vector<std::uint64_t> enumerate_admissible_omp(std::span<const std::uint64_t> primes,
                                                    std::span<const std::uint64_t> sizes,
                                                    unsigned shards);
GapSummary admissible_gaps_crt_omp(std::span<const std::uint64_t> primes,
                                   std::span<const std::uint64_t> sizes, unsigned shards);

/// Cyclic max gap of a sorted residue list modulo `period`.
std::uint64_t cyclic_max_gap(std::span<const std::uint64_t> sorted, std::uint64_t period);

/// Non-cyclic scan of [0, length): admissible count and the largest gap
/// between consecutive admissible values seen. A lower bound on the cyclic
/// max gap when the period is too large to walk.
struct PrefixScan {
  std::uint64_t admissible = 0;
  std::uint64_t max_internal_gap = 0;
};
PrefixScan admissible_prefix_scan(std::span<const std::uint64_t> primes,
                                  std::span<const std::uint64_t> sizes, std::uint64_t length);

/// All (x, y) with x = x_first + i, y = y_first + j, y > x + k, y <= y_max and
/// small[i] > C * large[j]. Ordered by (x, y).
using Pair = std::pair<std::uint64_t, std::uint64_t>;
std::vector<Pair> anomaly_pairs_serial(std::span<const BigInt> small, std::uint64_t x_first,
                                       std::span<const BigInt> large, std::uint64_t y_first,
                                       std::uint64_t k, const Rational& C, std::uint64_t y_max);
std::vector<Pair> anomaly_pairs_omp(std::span<const BigInt> small, std::uint64_t x_first,
                                    std::span<const BigInt> large, std::uint64_t y_first,
                                    std::uint64_t k, const Rational& C, std::uint64_t y_max,
                                    unsigned shards);

}  // namespace lcmwit::kernels
