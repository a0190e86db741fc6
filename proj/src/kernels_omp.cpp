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

#include <omp.h>

#include <algorithm>

#include "kernel_detail.hpp"
#include "lcmwit/kernels.hpp"

namespace lcmwit::kernels {

using detail::u128;
using detail::u64;

namespace {

struct Chunk {
  u64 first;
  u64 last;
};

// Split [first, last] into at most `shards` contiguous chunks.
std::vector<Chunk> split(u64 first, u64 last, unsigned shards) {
  std::vector<Chunk> out;
  if (first > last) return out;
  u128 total = static_cast<u128>(last - first) + 1;
  u128 n = std::max<unsigned>(shards, 1);
  if (n > total) n = total;
  u128 base = total / n, extra = total % n;
  u128 at = first;
  for (u128 i = 0; i < n; ++i) {
    u128 len = base + (i < extra ? 1 : 0);
    out.push_back({static_cast<u64>(at), static_cast<u64>(at + len - 1)});
    at += len;
  }
  return out;
}

}  // namespace

std::optional<u64> first_hit_omp(u64 first, u64 last, std::span<const ProgressionWindow> windows,
                                 unsigned shards) {
  const auto chunks = split(first, last, shards);
  std::vector<std::optional<u64>> hits(chunks.size());
  const auto n = static_cast<long>(chunks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < n; ++c) {
    hits[c] = first_hit_serial(chunks[c].first, chunks[c].last, windows);
  }
  for (const auto& h : hits) {
    if (h) return h;
  }
  return std::nullopt;
}

std::optional<u64> last_hit_omp(u64 first, u64 last, std::span<const ProgressionWindow> windows,
                                unsigned shards) {
  const auto chunks = split(first, last, shards);
  std::vector<std::optional<u64>> hits(chunks.size());
  const auto n = static_cast<long>(chunks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < n; ++c) {
    hits[c] = last_hit_serial(chunks[c].first, chunks[c].last, windows);
  }
  for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
    if (*it) return *it;
  }
  return std::nullopt;
}

std::vector<u64> enumerate_admissible_omp(std::span<const u64> primes, std::span<const u64> sizes,
                                          unsigned shards) {
  detail::check_admissible_input(primes, sizes);
  const u64 period = detail::period_of(primes);
  const std::size_t r = primes.size();

  // CRT basis: e_j == 1 mod p_j, 0 mod p_i (i != j).
  std::vector<u64> basis(r);
  for (std::size_t j = 0; j < r; ++j) {
    BigInt cofactor = from_u64(period / primes[j]);
    BigInt inv;
    BigInt pj = from_u64(primes[j]);
    mpz_invert(inv.get_mpz_t(), cofactor.get_mpz_t(), pj.get_mpz_t());
    BigInt e = cofactor * inv % from_u64(period);
    basis[j] = to_u64(e);
  }
  auto addmod = [period](u64 a, u64 b) { return a >= period - b ? a - (period - b) : a + b; };
  // contribution of admissible value v (in [1, size]) of prime j; v == p is residue 0
  auto term = [&](std::size_t j, u64 v) {
    u64 res = v == primes[j] ? 0 : v;
    return static_cast<u64>(static_cast<u128>(res) * basis[j] % period);
  };

  const std::size_t lead = r - 1;
  const auto chunks = split(1, sizes[lead], shards);
  std::vector<std::vector<u64>> parts(chunks.size());
  const auto n = static_cast<long>(chunks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < n; ++c) {
    auto& out = parts[c];
    for (u64 v_lead = chunks[c].first; v_lead <= chunks[c].last; ++v_lead) {
      // odometer over the other primes, values 1..size_j
      std::vector<u64> digit(lead, 1);
      std::vector<u64> partial(lead + 1);
      partial[0] = term(lead, v_lead);
      for (std::size_t j = 0; j < lead; ++j) partial[j + 1] = addmod(partial[j], term(j, 1));
      for (;;) {
        out.push_back(partial[lead]);
        // advance the rightmost digit that still has room
        std::size_t j = lead;
        while (j > 0 && digit[j - 1] == sizes[j - 1]) --j;
        if (j == 0) break;
        --j;
        ++digit[j];
        partial[j + 1] = addmod(partial[j], term(j, digit[j]));
        for (std::size_t i = j + 1; i < lead; ++i) {
          digit[i] = 1;
          partial[i + 1] = addmod(partial[i], term(i, 1));
        }
      }
    }
    std::sort(out.begin(), out.end());
  }

  std::vector<u64> merged;
  for (auto& part : parts) {
    const auto mid = static_cast<std::ptrdiff_t>(merged.size());
    merged.insert(merged.end(), part.begin(), part.end());
    std::inplace_merge(merged.begin(), merged.begin() + mid, merged.end());
    part.clear();
    part.shrink_to_fit();
  }
  return merged;
}

GapSummary admissible_gaps_crt_omp(std::span<const u64> primes, std::span<const u64> sizes,
                                   unsigned shards) {
  const u64 period = detail::period_of(primes);
  const auto values = enumerate_admissible_omp(primes, sizes, shards);
  return {values.size(), cyclic_max_gap(values, period)};
}

std::vector<Pair> anomaly_pairs_omp(std::span<const BigInt> small, u64 x_first,
                                    std::span<const BigInt> large, u64 y_first, u64 k,
                                    const Rational& C, u64 y_max, unsigned shards) {
  const auto chunks = split(0, small.empty() ? 0 : small.size() - 1, shards);
  std::vector<std::vector<Pair>> parts(chunks.size());
  if (small.empty()) return {};
  const auto n = static_cast<long>(chunks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < n; ++c) {
    auto slice = small.subspan(chunks[c].first, chunks[c].last - chunks[c].first + 1);
    parts[c] = anomaly_pairs_serial(slice, x_first + chunks[c].first, large, y_first, k, C, y_max);
  }
  std::vector<Pair> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace lcmwit::kernels
