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
#include <span>
#include <vector>

#include "lcmwit/error.hpp"
#include "lcmwit/kernels.hpp"

namespace lcmwit::kernels::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Running residues of a progression, stepped one s at a time.
class ProgressionCursor {
 public:
  ProgressionCursor(std::span<const ProgressionWindow> windows, u64 s) : windows_(windows) {
    values_.reserve(windows.size());
    for (const auto& w : windows) {
      if (w.modulus == 0) throw Error(ErrorKind::Domain, "zero modulus in progression window");
      u128 v = static_cast<u128>(s % w.modulus) * (w.stride % w.modulus) + w.offset % w.modulus;
      values_.push_back(static_cast<u64>(v % w.modulus));
    }
  }

  bool passes() const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const auto& w = windows_[i];
      u64 v = values_[i] == 0 ? w.modulus : values_[i];
      if (v < w.lo || v > w.hi) return false;
    }
    return true;
  }

  void forward() {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const auto& w = windows_[i];
      u64 step = w.stride % w.modulus;
      values_[i] = values_[i] >= w.modulus - step ? values_[i] - (w.modulus - step) : values_[i] + step;
    }
  }

  void backward() {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const auto& w = windows_[i];
      u64 step = w.stride % w.modulus;
      values_[i] = values_[i] >= step ? values_[i] - step : values_[i] + (w.modulus - step);
    }
  }

 private:
  std::span<const ProgressionWindow> windows_;
  std::vector<u64> values_;
};

inline void check_admissible_input(std::span<const u64> primes, std::span<const u64> sizes) {
  if (primes.empty() || primes.size() != sizes.size()) {
    throw Error(ErrorKind::Domain, "admissible-set kernels need matching non-empty prime/size lists");
  }
  for (std::size_t j = 0; j < primes.size(); ++j) {
    if (primes[j] < 2 || sizes[j] < 1 || sizes[j] > primes[j]) {
      throw Error(ErrorKind::Domain, "interval size must lie in [1, p]");
    }
  }
}

// prod(primes), rejecting periods at or above 2^63.
inline u64 period_of(std::span<const u64> primes) {
  u128 period = 1;
  for (u64 p : primes) {
    period *= p;
    if (period >= (u128{1} << 63)) throw Error(ErrorKind::Infeasible, "period exceeds 2^63");
  }
  return static_cast<u64>(period);
}

inline bool rotated_admissible(std::span<const u64> residues, std::span<const u64> primes,
                               std::span<const u64> sizes) {
  for (std::size_t j = 0; j < residues.size(); ++j) {
    u64 v = residues[j] == 0 ? primes[j] : residues[j];
    if (v > sizes[j]) return false;
  }
  return true;
}

}  // namespace lcmwit::kernels::detail
