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

// Empirical probes of the residue-density question: for the primes p_j
// strictly between sqrt(k) and k, with I_j = {1..ceil(p_j^(1-delta))}, how
// long can a run of consecutive integers avoid every x with x mod p_j in I_j
// for all j? Findings at finite k are evidence only; the underlying question
// quantifies over all sufficiently large k.
//
// Residues are read in [1, p] (0 is p), matching the construction windows.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lcmwit/numtheory.hpp"

namespace lcmwit {

struct SieveInstance {
  std::uint64_t k = 0;
  Rational delta;
  std::vector<std::uint64_t> primes;          // strictly between sqrt(k) and k
  std::vector<std::uint64_t> interval_sizes;  // ceil(p^(1-delta)), exact
  BigInt Mq;                                  // product of the primes
};

SieveInstance build_instance(std::uint64_t k, const Rational& delta, const PrimeTable& table);

enum class GapMethod { Auto, CrtEnumeration, ExhaustiveScan };

std::string_view to_string(GapMethod m);

struct DensityOptions {
  std::uint64_t scan_budget = 1'000'000'000;       // max period for the exhaustive walk
  std::uint64_t enumeration_budget = 50'000'000;   // max admissible-set size to materialize
  unsigned shards = 16;
  GapMethod method = GapMethod::Auto;
};

struct GapResult {
  std::uint64_t max_gap = 0;
  std::uint64_t admissible = 0;  // as counted by the method used
  GapMethod method = GapMethod::Auto;
};

/// Cyclic maximum distance between consecutive admissible residues mod Mq.
/// Throws Infeasible when the chosen method is over budget.
GapResult exact_max_gap(const SieveInstance& inst, const DensityOptions& opts = {});

struct PrimeDetail {
  std::uint64_t p;
  std::uint64_t interval_size;
  std::uint64_t k_mod_p;
  bool interval_within_a_window;   // size <= p - (k mod p)
  bool reflected_within_b_window;  // -y mod p in I  implies  y mod p in [p - k mod p, p]
};

struct DensityReport {
  SieveInstance instance;
  Rational epsilon;
  BigInt admissible_count;  // prod of interval sizes (CRT bijection)
  BigInt window;            // ceil(Mq^eps)
  bool exhaustive = false;
  std::optional<std::uint64_t> max_gap;              // exact, when exhaustive
  std::optional<std::uint64_t> max_gap_lower_bound;  // from a prefix scan otherwise
  GapMethod method = GapMethod::Auto;
  /// max_gap <= window when exhaustive; false when even the lower bound
  /// exceeds the window; empty when undecided.
  std::optional<bool> verdict;
  std::vector<PrimeDetail> per_prime;
};

DensityReport probe_question(std::uint64_t k, const Rational& epsilon, const Rational& delta,
                             const PrimeTable& table, const DensityOptions& opts = {});

/// One report per (delta, epsilon), computing each delta's gap once.
std::vector<DensityReport> probe_sweep(std::uint64_t k, const std::vector<Rational>& deltas,
                                       const std::vector<Rational>& epsilons,
                                       const PrimeTable& table, const DensityOptions& opts = {});

struct BadPrimeStats {
  std::uint64_t k = 0;
  Rational delta;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> bad_primes;   // k mod p > p - p^(1-delta) or < p^(1-delta)
  std::vector<std::uint64_t> good_primes;
  Rational fraction;                       // |bad| / r
};

BadPrimeStats bad_prime_stats(std::uint64_t k, const Rational& delta, const PrimeTable& table);

struct GoodK {
  std::uint64_t K = 0;
  std::uint64_t k = 0;
  BadPrimeStats stats;
  Rational average_fraction;     // over [K, 2K)
  double averaging_bound = 0;    // 7 K^(-delta/2), for display
  bool within_averaging_bound = false;  // fraction <= 7 K^(-delta/2), exact
};

/// k in [K, 2K) minimizing the bad fraction; ties go to the smallest k.
GoodK select_good_k(std::uint64_t K, const Rational& delta, const PrimeTable& table);

struct ReductionComponents {
  BigInt good_product;     // prod over G
  BigInt bad_product;      // prod over B
  BigInt m;                // prod_{p*p <= k} p^floor(log_p k)
  BigInt Mq;
  Rational epsilon;
  bool bad_within = false;       // prod_B <= Mq^(2 eps)
  bool m_below = false;          // m < Mq^eps
  bool ratio_at_least = false;   // prod_G / (m prod_B) >= Mq^(1 - 5 eps)
};

/// `good` and `bad` must partition the instance primes for k.
ReductionComponents reduction_bound_components(std::uint64_t k, const Rational& epsilon,
                                               const std::vector<std::uint64_t>& good,
                                               const std::vector<std::uint64_t>& bad,
                                               const PrimeTable& table);

}  // namespace lcmwit
