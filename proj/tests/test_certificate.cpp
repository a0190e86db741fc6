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

#include <gtest/gtest.h>

#include <random>

#include "lcmwit/certificate.hpp"
#include "lcmwit/error.hpp"
#include "mutations.hpp"

namespace lcmwit {
namespace {

using u64 = std::uint64_t;

const WitnessCertificate& sample() {
  static const WitnessCertificate cert = construct_witness(40, 10);
  return cert;
}

TEST(FactoredJson, RoundTripAndForm) {
  const auto v = FactoredValue::from_factors({{2, 3}, {7, 1}, {101, 2}});
  const Json j = factored_to_json(v);
  EXPECT_EQ(j.dump(), R"({"factors":[[2,3],[7,1],[101,2]]})");
  EXPECT_EQ(factored_from_json(j), v);
  EXPECT_THROW(factored_from_json(Json::parse(R"({"factors":[[4,1]]})")), Error);
  EXPECT_THROW(factored_from_json(Json::parse(R"({"factors":[[3,1],[2,1]]})")), Error);
  EXPECT_THROW(factored_from_json(Json::parse(R"({"factors":[[3,0]]})")), Error);
  EXPECT_THROW(factored_from_json(Json::parse(R"([[2,1]])")), Error);
}

TEST(Certificate, FieldOrderAndVersion) {
  const Json j = certificate_to_json(sample());
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"version", "k", "C", "epsilon", "y_primes", "x_primes", "a_choices",
                                            "b_choices", "x", "y", "M", "m", "report"}));
  EXPECT_EQ(j["version"], "lcmwit/1");
  EXPECT_TRUE(j["x"].is_string());
  EXPECT_TRUE(j["a_choices"][0].is_array());
}

TEST(Certificate, RoundTripReverifies) {
  const Json j = certificate_to_json(sample());
  const WitnessCertificate back = certificate_from_json(Json::parse(j.dump(2)));
  const auto check = verify_certificate(back);
  EXPECT_TRUE(check.accepted);
  for (const auto& f : check.failures) ADD_FAILURE() << f;
  EXPECT_EQ(certificate_to_json(back), j);
  EXPECT_EQ(back.x, sample().x);
  EXPECT_EQ(back.M, sample().M);
}

TEST(Certificate, StrictParsing) {
  Json j = certificate_to_json(sample());
  Json extra = j;
  extra["surprise"] = 1;
  EXPECT_THROW(certificate_from_json(extra), Error);
  Json missing = j;
  missing.erase("y");
  EXPECT_THROW(certificate_from_json(missing), Error);
  Json wrong_type = j;
  wrong_type["x"] = 12;
  EXPECT_THROW(certificate_from_json(wrong_type), Error);
  Json version = j;
  version["version"] = "lcmwit/2";
  try {
    certificate_from_json(version);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
}

TEST(Certificate, TargetedTampering) {
  const WitnessCertificate& good = sample();
  {
    auto c = good;
    c.x += 1;
    EXPECT_FALSE(verify_certificate(c).accepted);
  }
  {
    auto c = good;
    c.y -= 1;
    EXPECT_FALSE(verify_certificate(c).accepted);
  }
  {
    // move one residue outside its window and recompute x consistently
    auto c = good;
    const auto windows = residue_windows(c.k, PrimeTable(c.k));
    const u64 q = c.x_primes[0];
    c.a_choices[q] = windows.find(q)->a.hi + 1;
    EXPECT_FALSE(verify_certificate(c).accepted);
  }
  {
    auto c = good;
    c.C = 1000;
    EXPECT_FALSE(verify_certificate(c).accepted);
  }
  {
    auto c = good;
    c.k += 1;
    EXPECT_FALSE(verify_certificate(c).accepted);
  }
  {
    auto c = good;
    c.epsilon = good.epsilon / 2;
    EXPECT_FALSE(verify_certificate(c).accepted);
  }
  {
    auto c = good;
    c.transcript.clear();
    EXPECT_FALSE(verify_certificate(c).accepted);
  }
}

TEST(Certificate, RandomSingleFieldMutationsAreRejected) {
  const Json doc = certificate_to_json(sample());
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    std::string what;
    const Json bad = mutation::mutate(doc, rng, what);
    bool accepted = false;
    try {
      accepted = verify_certificate(certificate_from_json(bad)).accepted;
    } catch (const Error&) {
    }
    ASSERT_FALSE(accepted) << what;
  }
}

}  // namespace
}  // namespace lcmwit
