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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "lcmwit/kernels.hpp"

namespace {

using namespace lcmwit::kernels;
using u64 = std::uint64_t;

// Windows narrow enough that hits are rare in the scanned range.
const std::vector<ProgressionWindow>& sparse_windows() {
  static const std::vector<ProgressionWindow> ws = {
      {1009, 3, 17, 1, 3}, {1013, 5, 29, 1, 3}, {1019, 0, 31, 1, 4}};
  return ws;
}

void BM_FirstHitSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_hit_serial(0, static_cast<u64>(state.range(0)), sparse_windows()));
  }
}

void BM_FirstHitOmp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_hit_omp(0, static_cast<u64>(state.range(0)), sparse_windows(), 16));
  }
}

const std::vector<u64> kPrimes = {7, 11, 13, 17, 19, 23, 29};
const std::vector<u64> kSizes = {4, 6, 7, 8, 8, 9, 11};

void BM_GapsScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(admissible_gaps_scan_serial(kPrimes, kSizes));
}

void BM_GapsCrtOmp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(admissible_gaps_crt_omp(kPrimes, kSizes, static_cast<unsigned>(state.range(0))));
  }
}

struct AnomalyInput {
  std::vector<lcmwit::BigInt> small, large;
  AnomalyInput() {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) small.emplace_back(std::to_string(rng() % 1'000'000'000));
    for (int i = 0; i < 2000; ++i) large.emplace_back(std::to_string(rng() % 1'000'000'000));
  }
};

const AnomalyInput& anomaly_input() {
  static const AnomalyInput in;
  return in;
}

void BM_AnomalySerial(benchmark::State& state) {
  const auto& in = anomaly_input();
  for (auto _ : state) {
    benchmark::DoNotOptimize(anomaly_pairs_serial(in.small, 1, in.large, 1, 7, lcmwit::Rational(1), 2000));
  }
}

void BM_AnomalyOmp(benchmark::State& state) {
  const auto& in = anomaly_input();
  for (auto _ : state) {
    benchmark::DoNotOptimize(anomaly_pairs_omp(in.small, 1, in.large, 1, 7, lcmwit::Rational(1), 2000, 16));
  }
}

}  // namespace

BENCHMARK(BM_FirstHitSerial)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstHitOmp)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GapsScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapsCrtOmp)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AnomalySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnomalyOmp)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
