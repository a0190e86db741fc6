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

#include <algorithm>

#include "kernel_detail.hpp"
#include "lcmwit/kernels.hpp"

namespace lcmwit::kernels {

using detail::u64;

std::optional<u64> first_hit_serial(u64 first, u64 last, std::span<const ProgressionWindow> windows) {
  if (first > last) return std::nullopt;
  detail::ProgressionCursor cur(windows, first);
  for (u64 s = first;; ++s) {
    if (cur.passes()) return s;
    if (s == last) return std::nullopt;
    cur.forward();
  }
}

std::optional<u64> last_hit_serial(u64 first, u64 last, std::span<const ProgressionWindow> windows) {
  if (first > last) return std::nullopt;
  detail::ProgressionCursor cur(windows, last);
  for (u64 s = last;; --s) {
    if (cur.passes()) return s;
    if (s == first) return std::nullopt;
    cur.backward();
  }
}

GapSummary admissible_gaps_scan_serial(std::span<const u64> primes, std::span<const u64> sizes) {
  detail::check_admissible_input(primes, sizes);
  const u64 period = detail::period_of(primes);
  std::vector<u64> r(primes.size(), 0);
  GapSummary out;
  u64 first = 0, last = 0;
  for (u64 x = 0; x < period; ++x) {
    if (detail::rotated_admissible(r, primes, sizes)) {
      if (out.admissible == 0) first = x;
      else out.max_gap = std::max(out.max_gap, x - last);
      last = x;
      ++out.admissible;
    }
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (++r[j] == primes[j]) r[j] = 0;
    }
  }
  if (out.admissible > 0) out.max_gap = std::max(out.max_gap, first + period - last);
  return out;
}

u64 cyclic_max_gap(std::span<const u64> sorted, u64 period) {
  if (sorted.empty()) throw Error(ErrorKind::Domain, "no admissible residues");
  u64 gap = sorted.front() + period - sorted.back();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::max(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

PrefixScan admissible_prefix_scan(std::span<const u64> primes, std::span<const u64> sizes, u64 length) {
  detail::check_admissible_input(primes, sizes);
  std::vector<u64> r(primes.size(), 0);
  PrefixScan out;
  u64 last = 0;
  for (u64 x = 0; x < length; ++x) {
    if (detail::rotated_admissible(r, primes, sizes)) {
      if (out.admissible > 0) out.max_internal_gap = std::max(out.max_internal_gap, x - last);
      last = x;
      ++out.admissible;
    }
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (++r[j] == primes[j]) r[j] = 0;
    }
  }
  return out;
}

std::vector<Pair> anomaly_pairs_serial(std::span<const BigInt> small, u64 x_first,
                                       std::span<const BigInt> large, u64 y_first, u64 k,
                                       const Rational& C, u64 y_max) {
  std::vector<Pair> out;
  BigInt lhs, rhs;
  for (std::size_t i = 0; i < small.size(); ++i) {
    const u64 x = x_first + i;
    lhs = small[i] * C.get_den();
    for (u64 y = std::max(x + k + 1, y_first); y <= y_max; ++y) {
      const std::size_t j = y - y_first;
      if (j >= large.size()) break;
      rhs = large[j] * C.get_num();
      if (lhs > rhs) out.emplace_back(x, y);
    }
  }
  return out;
}

}  // namespace lcmwit::kernels
