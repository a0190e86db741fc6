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

#include <string_view>

#include "json.hpp"
#include "lcmwit/construction.hpp"
#include "lcmwit/numtheory.hpp"

namespace lcmwit {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kCertificateVersion = "lcmwit/1";

/// {"factors": [[p, e], ...]} sorted by p.
Json factored_to_json(const FactoredValue& v);
FactoredValue factored_from_json(const Json& j);

/// Stable field order: version, k, C, epsilon, y_primes, x_primes,
/// a_choices, b_choices, x, y, M, m, report.
Json certificate_to_json(const WitnessCertificate& cert);
/// Throws Parse on missing fields or wrong types.
WitnessCertificate certificate_from_json(const Json& j);

}  // namespace lcmwit
