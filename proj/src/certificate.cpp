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

#include "lcmwit/certificate.hpp"

#include <algorithm>
#include <set>

#include "lcmwit/error.hpp"

namespace lcmwit {

namespace {

using u64 = std::uint64_t;

constexpr int kTranscriptDigits = 30;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, "certificate: " + what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
  return j.at(name);
}

u64 as_u64(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return j.get<u64>();
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::map<u64, u64> pairs_from_json(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of [p, r] pairs");
  std::map<u64, u64> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad(std::string(what) + " entries must be [p, r] pairs");
    const u64 p = as_u64(e[0], what);
    if (!out.emplace(p, as_u64(e[1], what)).second) bad(std::string("duplicate prime in ") + what);
  }
  return out;
}

Json pairs_to_json(const std::map<u64, u64>& m) {
  Json out = Json::array();
  for (const auto& [p, r] : m) out.push_back(Json::array({p, r}));
  return out;
}

std::string decimal(const Rational& v) { return format_significant(v, kTranscriptDigits); }

}  // namespace

Json factored_to_json(const FactoredValue& v) {
  Json arr = Json::array();
  for (const auto& [p, e] : v.factors()) arr.push_back(Json::array({p, e}));
  return Json{{"factors", arr}};
}

FactoredValue factored_from_json(const Json& j) {
  const Json& arr = field(j, "factors");
  if (!arr.is_array()) bad("factors must be an array");
  FactoredValue::Map m;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2) bad("factor entries must be [p, e] pairs");
    const u64 p = as_u64(e[0], "factor prime");
    const u64 x = as_u64(e[1], "factor exponent");
    if (x > 0xffffffffu) bad("factor exponent too large");
    if (!m.empty() && p <= m.rbegin()->first) bad("factor primes must be strictly increasing");
    m.emplace(p, static_cast<std::uint32_t>(x));
  }
  return FactoredValue::from_factors(std::move(m));
}

std::string certificate_transcript(const WitnessCertificate& cert, const VerificationReport& report) {
  Json t;
  t["k"] = cert.k;
  t["C"] = cert.C;
  const Rational half(from_u64(cert.k), 2);
  const Rational kk(from_u64(cert.k));
  t["selection"] = {
      {"epsilon", format_rational(cert.epsilon)},
      {"y_interval", Json::array({format_rational(half), format_rational(half * (1 + cert.epsilon))})},
      {"x_interval", Json::array({format_rational(kk * (1 - cert.epsilon)), format_rational(kk)})},
  };
  Json checks = Json::array();
  for (const auto& c : report.per_prime) checks.push_back(Json::array({c.p, c.lhs, c.rhs, c.equal}));
  t["claim2"] = {{"holds", report.claim2_holds},
                 {"per_prime", checks},
                 {"primes_above_k", "at most one multiple in k+1 consecutive integers; v_p = 0 on both sides"}};
  t["ratio"] = report.ratio ? Json(decimal(*report.ratio)) : Json(nullptr);
  t["ratio_exceeds_C"] = report.ratio_exceeds_c;
  if (report.bound_chain) {
    const auto& b = *report.bound_chain;
    t["bound_chain"] = {
        {"M_over_y_plus_k", decimal(b.m_over_y_plus_k)},
        {"x_over_y_pow_k", decimal(b.x_over_y_pow_k)},
        {"four_C_k_over_k_plus_1_pow_k", decimal(b.four_c_factor)},
        {"ratio_ge_product", b.ratio_at_least_product},
        {"M_over_y_plus_k_gt_4C", b.m_over_exceeds_4c},
        {"power_gt_k_over_k_plus_1_pow_k", b.power_exceeds},
        {"four_C_factor_gt_C", b.factor_exceeds_c},
    };
  } else {
    t["bound_chain"] = nullptr;
  }
  t["verdict"] = report.verdict;
  return t.dump();
}

Json certificate_to_json(const WitnessCertificate& cert) {
  Json j;
  j["version"] = kCertificateVersion;
  j["k"] = cert.k;
  j["C"] = cert.C;
  j["epsilon"] = format_rational(cert.epsilon);
  j["y_primes"] = cert.y_primes;
  j["x_primes"] = cert.x_primes;
  j["a_choices"] = pairs_to_json(cert.a_choices);
  j["b_choices"] = pairs_to_json(cert.b_choices);
  j["x"] = cert.x.get_str();
  j["y"] = cert.y.get_str();
  j["M"] = factored_to_json(cert.M);
  j["m"] = factored_to_json(cert.m);
  const std::string& transcript =
      cert.transcript.empty() ? certificate_transcript(cert, cert.report) : cert.transcript;
  j["report"] = Json::parse(transcript);
  return j;
}

WitnessCertificate certificate_from_json(const Json& j) {
  static const std::set<std::string> known = {"version",  "k",         "C", "epsilon", "y_primes",
                                              "x_primes", "a_choices", "b_choices", "x", "y",
                                              "M",        "m",         "report"};
  if (!j.is_object()) bad("top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) bad("unknown field '" + it.key() + "'");
  }
  if (as_string(field(j, "version"), "version") != kCertificateVersion) bad("unsupported version tag");
  WitnessCertificate c;
  c.k = as_u64(field(j, "k"), "k");
  c.C = as_u64(field(j, "C"), "C");
  c.epsilon = parse_rational(as_string(field(j, "epsilon"), "epsilon"));
  const Json& yp = field(j, "y_primes");
  const Json& xp = field(j, "x_primes");
  if (!yp.is_array() || yp.size() != 2) bad("y_primes must hold two primes");
  if (!xp.is_array() || xp.size() != 3) bad("x_primes must hold three primes");
  for (std::size_t i = 0; i < 2; ++i) c.y_primes[i] = as_u64(yp[i], "y_primes");
  for (std::size_t i = 0; i < 3; ++i) c.x_primes[i] = as_u64(xp[i], "x_primes");
  c.a_choices = pairs_from_json(field(j, "a_choices"), "a_choices");
  c.b_choices = pairs_from_json(field(j, "b_choices"), "b_choices");
  c.x = parse_decimal(as_string(field(j, "x"), "x"));
  c.y = parse_decimal(as_string(field(j, "y"), "y"));
  c.M = factored_from_json(field(j, "M"));
  c.m = factored_from_json(field(j, "m"));
  const Json& rep = field(j, "report");
  if (!rep.is_object()) bad("report must be an object");
  c.transcript = rep.dump();
  return c;
}

CertificateCheck verify_certificate(const WitnessCertificate& cert, u64 max_k) {
  CertificateCheck out;
  auto& fail = out.failures;
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) fail.push_back(what);
  };

  const u64 k = cert.k;
  if (k < 4 || k > max_k) {
    fail.push_back("k outside [4, " + std::to_string(max_k) + "]");
    return out;
  }
  require(cert.C >= 1, "C must be >= 1");
  if (cert.epsilon <= 0 || cert.epsilon > Rational(1, 2)) {
    fail.push_back("epsilon outside (0, 1/2]");
    return out;
  }

  const PrimeTable table(k);
  const FactoredValue M = big_M(k, table);
  const FactoredValue m = small_m(k, table);
  require(cert.M == M, "M does not equal lcm{1..k}");
  require(cert.m == m, "m does not equal the p*p <= k part of M");
  const BigInt Mi = M.to_integer();
  const BigInt mi = m.to_integer();

  try {
    require(select_y_primes(k, cert.epsilon, table) == cert.y_primes,
            "y_primes are not the two smallest primes in (k/2, (1+eps)k/2)");
  } catch (const Error& e) {
    fail.push_back(e.what());
  }
  try {
    require(select_x_primes(k, cert.epsilon, table) == cert.x_primes,
            "x_primes are not the three largest primes in ((1-eps)k, k)");
  } catch (const Error& e) {
    fail.push_back(e.what());
  }

  const ResidueWindows windows = residue_windows(k, table);
  std::set<u64> window_primes;
  for (const auto& e : windows.entries) window_primes.insert(e.p);
  auto keys = [](const std::map<u64, u64>& m) {
    std::set<u64> s;
    for (const auto& [p, r] : m) s.insert(p);
    return s;
  };
  const bool keys_ok = keys(cert.a_choices) == window_primes && keys(cert.b_choices) == window_primes;
  require(keys_ok, "residue vectors must cover exactly the primes in (sqrt k, k]");

  const auto is_y_prime = [&](u64 p) {
    return std::find(cert.y_primes.begin(), cert.y_primes.end(), p) != cert.y_primes.end();
  };
  const auto is_x_prime = [&](u64 p) {
    return std::find(cert.x_primes.begin(), cert.x_primes.end(), p) != cert.x_primes.end();
  };

  if (keys_ok) {
    std::vector<ResidueSystem::Congruence> xs{{mi, BigInt(1 % mi)}};
    std::vector<ResidueSystem::Congruence> ys{{mi, BigInt(0)}};
    bool residues_in_range = true;
    for (const auto& e : windows.entries) {
      const u64 a = cert.a_choices.at(e.p);
      const u64 b = cert.b_choices.at(e.p);
      require(e.a.contains(a), "a_" + std::to_string(e.p) + " outside [1, p - k mod p]");
      require(e.b.contains(b), "b_" + std::to_string(e.p) + " outside [p - k mod p, p]");
      require(is_x_prime(e.p) || a == 1, "a_" + std::to_string(e.p) + " must be 1 off the x primes");
      require(is_y_prime(e.p) || b == e.p, "b_" + std::to_string(e.p) + " must be p off the y primes");
      if (a < 1 || a > e.p || b < 1 || b > e.p) {
        residues_in_range = false;
        continue;
      }
      xs.push_back({from_u64(e.p), from_u64(a % e.p)});
      ys.push_back({from_u64(e.p), from_u64(b % e.p)});
    }
    if (residues_in_range && mi > 1) {
      require(crt(ResidueSystem(xs)) == cert.x, "x differs from the CRT solution of its residue vector");
      require(crt(ResidueSystem(ys)) == cert.y, "y differs from the CRT solution of its residue vector");
    }
  }

  const BigInt& x = cert.x;
  const BigInt& y = cert.y;
  require(0 < x && x < y && y < Mi, "need 0 < x < y < M");
  require(y - x > from_u64(k), "need y > x + k");
  require(y - x >= mi - 1, "need y - x >= m - 1");
  require(mi > 1 && x % mi == 1 % mi, "x must be 1 mod m");
  require(mi > 1 && y % mi == 0, "y must be 0 mod m");
  if (x >= 1 && y >= 1) {
    for (const auto& e : windows.entries) {
      require(e.a.contains(window_residue(x, e.p)), "x mod " + std::to_string(e.p) + " outside its a-window");
      require(e.b.contains(window_residue(y, e.p)), "y mod " + std::to_string(e.p) + " outside its b-window");
    }
  }

  if (cert.C >= 1) {
    const Rational c(from_u64(cert.C));
    const Rational kk(from_u64(k));
    const Rational yr(y), xr(x), Mr(Mi);
    require(yr > Mr / (5 * c) * (1 + 1 / kk), "y <= M/(5C) (1 + 1/k)");
    require(yr < Mr / (4 * c) - kk, "y >= M/(4C) - k");
    require(xr > yr - Mr / (5 * c * kk), "x <= y - M/(5Ck)");
  }

  if (x >= 1 && y >= 1) {
    out.report = verify_claim2(x, y, k, table);
    if (out.report.claim2_holds) {
      certify_ratio(out.report, x, y, k, cert.C, M);
      require(out.report.ratio_exceeds_c, "lcm ratio does not exceed C");
      require(out.report.bound_chain->holds(), "bound chain M/(y+k) > 4C, (x/y)^k > (k/(k+1))^k fails");
    } else {
      fail.push_back("valuation identity fails at some prime p <= k");
    }
    require(certificate_transcript(cert, out.report) == cert.transcript,
            "stored report differs from the recomputed transcript");
  }

  out.accepted = fail.empty();
  return out;
}

}  // namespace lcmwit
