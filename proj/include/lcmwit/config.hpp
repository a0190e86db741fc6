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
#include <string>
#include <string_view>

#include "lcmwit/numtheory.hpp"

namespace lcmwit {

enum class OutputFormat { Text, Json, Csv };

OutputFormat parse_output_format(std::string_view s);

struct Config {
  std::uint64_t prime_table_limit = 10'000'000;
  std::uint64_t lcm_feasibility_bound = kDefaultLcmBound;
  std::uint64_t member_bound = 100'000'000;      // brute-force searches
  std::uint64_t scan_budget = 1'000'000'000;      // density: period walk
  std::uint64_t enumeration_budget = 50'000'000;  // density: admissible set size
  std::uint64_t covering_bound = 10'000'000;      // covering claim: P
  Rational epsilon_start{1, 10};
  Rational epsilon_cap{1, 2};
  bool claim1_strict = true;
  unsigned shards = 16;
  bool parallel = true;
  OutputFormat output_format = OutputFormat::Text;
};

/// Throws Domain when a bound is zero or the eps pair is out of order.
void validate(const Config& c);

/// Reads a JSON defaults file. Unknown keys are rejected; missing keys keep
/// their defaults. Rationals are "a/b" strings.
Config load_config_file(const std::string& path, Config base = {});

}  // namespace lcmwit
