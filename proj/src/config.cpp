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

#include "lcmwit/config.hpp"

#include <fstream>

#include "json.hpp"
#include "lcmwit/error.hpp"

namespace lcmwit {

OutputFormat parse_output_format(std::string_view s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw Error(ErrorKind::Parse, "unknown output format '" + std::string(s) + "' (text|json|csv)");
}

void validate(const Config& c) {
  if (c.prime_table_limit < 2 || c.lcm_feasibility_bound == 0 || c.member_bound == 0 ||
      c.scan_budget == 0 || c.enumeration_budget == 0 || c.covering_bound == 0 || c.shards == 0) {
    throw Error(ErrorKind::Domain, "config bounds must be positive");
  }
  if (c.epsilon_start <= 0 || c.epsilon_start > c.epsilon_cap || c.epsilon_cap > Rational(1, 2)) {
    throw Error(ErrorKind::Domain, "config needs 0 < epsilon_start <= epsilon_cap <= 1/2");
  }
}

Config load_config_file(const std::string& path, Config c) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "config file must hold a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "prime_table_limit") c.prime_table_limit = v.get<std::uint64_t>();
      else if (key == "lcm_feasibility_bound") c.lcm_feasibility_bound = v.get<std::uint64_t>();
      else if (key == "member_bound") c.member_bound = v.get<std::uint64_t>();
      else if (key == "scan_budget") c.scan_budget = v.get<std::uint64_t>();
      else if (key == "enumeration_budget") c.enumeration_budget = v.get<std::uint64_t>();
      else if (key == "covering_bound") c.covering_bound = v.get<std::uint64_t>();
      else if (key == "epsilon_start") c.epsilon_start = parse_rational(v.get<std::string>());
      else if (key == "epsilon_cap") c.epsilon_cap = parse_rational(v.get<std::string>());
      else if (key == "claim1_strict") c.claim1_strict = v.get<bool>();
      else if (key == "shards") c.shards = v.get<unsigned>();
      else if (key == "parallel") c.parallel = v.get<bool>();
      else if (key == "output_format") c.output_format = parse_output_format(v.get<std::string>());
      else throw Error(ErrorKind::Parse, "unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorKind::Parse, "config key '" + key + "' has the wrong type");
    }
  }
  validate(c);
  return c;
}

}  // namespace lcmwit
