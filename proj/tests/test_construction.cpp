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

#include "lcmwit/construction.hpp"
#include "lcmwit/error.hpp"
#include "oracles.hpp"

namespace lcmwit {
namespace {

using u64 = std::uint64_t;
using oracle::big;

TEST(ResidueWindows, Examples) {
  const PrimeTable t(100);
  const auto w = residue_windows(30, t);
  const auto* e7 = w.find(7);
  ASSERT_NE(e7, nullptr);
  EXPECT_EQ(e7->k_mod_p, 2u);
  EXPECT_EQ(e7->a.lo, 1u);
  EXPECT_EQ(e7->a.hi, 5u);
  EXPECT_EQ(e7->b.lo, 5u);
  EXPECT_EQ(e7->b.hi, 7u);
  const auto* e29 = w.find(29);
  ASSERT_NE(e29, nullptr);
  EXPECT_EQ(e29->a.hi, 28u);
  EXPECT_EQ(e29->b.lo, 28u);
  EXPECT_EQ(w.find(5), nullptr);
  EXPECT_EQ(w.find(31), nullptr);
  const auto* e29k = residue_windows(29, t).find(29);
  ASSERT_NE(e29k, nullptr);
  EXPECT_EQ(e29k->a.hi, 29u);
  EXPECT_EQ(e29k->b.lo, 29u);
  EXPECT_THROW(residue_windows(3, t), Error);
}

TEST(ResidueWindows, WindowsTouchAtOnePoint) {
  const PrimeTable t(2000);
  for (u64 k = 4; k <= 2000; k += 13) {
    const auto w = residue_windows(k, t);
    for (const auto& e : w.entries) {
      ASSERT_GT(e.p * e.p, k);
      ASSERT_LE(e.p, k);
      ASSERT_LE(e.a.lo, e.a.hi);
      ASSERT_LE(e.b.lo, e.b.hi);
      ASSERT_EQ(e.a.hi, e.b.lo);
      ASSERT_EQ(e.b.hi, e.p);
    }
  }
}

TEST(ResidueWindows, ResidueZeroReadsAsP) {
  EXPECT_EQ(window_residue(BigInt(14), 7), 7u);
  EXPECT_EQ(window_residue(BigInt(15), 7), 1u);
  EXPECT_EQ(window_residue(BigInt("7" + std::string(31, '0')), 7), 7u);
  EXPECT_EQ(window_residue(BigInt("1" + std::string(32, '0')), 7), 2u);
}

TEST(SelectPrimes, Examples) {
  const PrimeTable t(1000);
  EXPECT_EQ(select_y_primes(200, Rational(1, 10), t), (std::array<u64, 2>{101, 103}));
  try {
    select_y_primes(100, Rational(1, 10), t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SelectionFailed);
  }
  EXPECT_EQ(select_y_primes(100, Rational(1, 5), t), (std::array<u64, 2>{53, 59}));
  EXPECT_EQ(select_x_primes(200, Rational(1, 5), t), (std::array<u64, 3>{193, 197, 199}));
  EXPECT_EQ(select_x_primes(100, Rational(3, 10), t), (std::array<u64, 3>{83, 89, 97}));
  EXPECT_THROW(select_x_primes(100, Rational(1, 100), t), Error);
}

TEST(SelectPrimes, OpenIntervalsAgainstTrialDivision) {
  const PrimeTable t(3000);
  for (u64 k = 20; k < 3000; k += 37) {
    const Rational eps(1, 4);
    std::vector<u64> ys, xs;
    for (u64 p = 2; p <= k; ++p) {
      if (!oracle::is_prime(p)) continue;
      if (Rational(big(2 * p)) > Rational(big(k)) && Rational(big(2 * p)) < Rational(big(k)) * (1 + eps)) {
        ys.push_back(p);
      }
      if (Rational(big(p)) > Rational(big(k)) * (1 - eps) && p < k) xs.push_back(p);
    }
    if (ys.size() >= 2) EXPECT_EQ(select_y_primes(k, eps, t), (std::array<u64, 2>{ys[0], ys[1]}));
    if (xs.size() >= 3) {
      const auto n = xs.size();
      EXPECT_EQ(select_x_primes(k, eps, t), (std::array<u64, 3>{xs[n - 3], xs[n - 2], xs[n - 1]}));
    }
  }
}

struct Fixture {
  u64 k;
  PrimeTable table;
  ResidueWindows windows;
  FactoredValue M, m;
  explicit Fixture(u64 kk)
      : k(kk), table(kk), windows(residue_windows(kk, table)), M(big_M(kk, table)), m(small_m(kk, table)) {}
};

bool y_conditions(const Fixture& s, u64 C, u64 p1, u64 p2, const BigInt& y) {
  const BigInt Mi = s.M.to_integer();
  const Rational yr(y);
  if (!(Rational(Mi, 5 * C) * Rational(big(s.k + 1), big(s.k)) < yr)) return false;
  if (!(yr < Rational(Mi, 4 * C) - Rational(big(s.k)))) return false;
  if (y % (Mi / (big(p1) * big(p2))) != 0) return false;
  for (u64 p : {p1, p2}) {
    const u64 r = window_residue(y, p);
    if (r < 2 * p - s.k || r > p) return false;
  }
  return true;
}

TEST(ConstructY, ToyRunAgainstExhaustiveScan) {
  const Fixture s(30);
  const auto [p1, p2] = select_y_primes(30, Rational(1, 2), s.table);
  ASSERT_EQ(p1, 17u);
  ASSERT_EQ(p2, 19u);
  const BigInt Mi = s.M.to_integer(), N = Mi / (big(p1) * big(p2));
  std::optional<BigInt> expected;
  for (BigInt y = N; y < Mi; y += N) {
    if (y_conditions(s, 1, p1, p2, y)) {
      expected = y;
      break;
    }
  }
  ASSERT_TRUE(expected.has_value());
  for (bool parallel : {false, true}) {
    const YChoice yc = construct_y(30, 1, p1, p2, s.windows, s.M, s.m, {parallel, 8});
    EXPECT_EQ(yc.y, *expected);
    EXPECT_EQ(yc.y % s.m.to_integer(), 0);
    for (const auto& e : s.windows.entries) {
      EXPECT_TRUE(e.b.contains(yc.b_choices.at(e.p))) << e.p;
      if (e.p != p1 && e.p != p2) EXPECT_EQ(yc.b_choices.at(e.p), e.p);
    }
  }
}

TEST(ConstructY, FailsWhenIntervalHasNoValidMultiple) {
  const Fixture s(20);
  try {
    construct_y(20, 10, 11, 13, s.windows, s.M, s.m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConstructionFailed);
  }
}

TEST(ConstructX, ToyRunAgainstExhaustiveScan) {
  const Fixture s(30);
  const u64 C = 1;
  const YChoice yc = construct_y(30, C, 17, 19, s.windows, s.M, s.m);
  const auto q = select_x_primes(30, Rational(1, 2), s.table);
  ASSERT_EQ(q, (std::array<u64, 3>{19, 23, 29}));
  const BigInt Mi = s.M.to_integer();
  const BigInt L = Mi / (big(q[0]) * big(q[1]) * big(q[2]));
  std::optional<BigInt> expected;
  const Rational lower = Rational(yc.y) - Rational(Mi, big(5 * C * 30));
  for (BigInt x = 1; x < yc.y; x += L) {
    if (!(Rational(x) > lower)) continue;
    bool ok = true;
    for (u64 p : q) {
      if (!s.windows.find(p)->a.contains(window_residue(x, p))) ok = false;
    }
    if (ok) expected = x;
  }
  ASSERT_TRUE(expected.has_value());
  for (bool parallel : {false, true}) {
    const XChoice xc = construct_x(30, C, yc.y, q, s.windows, s.M, s.m, {parallel, 5});
    EXPECT_EQ(xc.x, *expected);
    EXPECT_EQ(xc.x % s.m.to_integer(), 1);
    EXPECT_GT(yc.y - xc.x, 30);
    EXPECT_GE(yc.y - xc.x, s.m.to_integer() - 1);
    // x is the CRT solution of its own residue vector
    std::vector<ResidueSystem::Congruence> cs{{s.m.to_integer(), BigInt(1)}};
    for (const auto& e : s.windows.entries) {
      EXPECT_TRUE(e.a.contains(xc.a_choices.at(e.p)));
      if (std::find(q.begin(), q.end(), e.p) == q.end()) EXPECT_EQ(xc.a_choices.at(e.p), 1u);
      cs.push_back({big(e.p), BigInt(big(xc.a_choices.at(e.p) % e.p))});
    }
    EXPECT_EQ(crt(ResidueSystem(cs)), xc.x);
  }
}

// Both sides of the valuation identity by direct lcm computation.
std::pair<BigInt, BigInt> direct_sides(const BigInt& x, const BigInt& y, u64 k, const BigInt& M) {
  const BigInt lhs = oracle::product(y, y + big(k)) / oracle::lcm_fold(y, y + big(k));
  const BigInt rhs = M * oracle::product(x, x + big(k - 1)) / oracle::lcm_fold(x, x + big(k - 1));
  return {lhs, rhs};
}

bool in_windows(const Fixture& s, const BigInt& v, bool a_side) {
  for (const auto& e : s.windows.entries) {
    const u64 r = window_residue(v, e.p);
    if (!(a_side ? e.a : e.b).contains(r)) return false;
  }
  return true;
}

TEST(VerifyClaim2, ExhaustiveAtK8) {
  const Fixture s(8);
  const BigInt M = s.M.to_integer(), m = s.m.to_integer();
  ASSERT_EQ(M, 840);
  ASSERT_EQ(m, 8);
  int pairs = 0;
  for (BigInt x = 1; x < M; x += m) {
    if (!in_windows(s, x, true)) continue;
    for (BigInt y = m; y < M; y += m) {
      if (!in_windows(s, y, false)) continue;
      const auto [lhs, rhs] = direct_sides(x, y, 8, M);
      ASSERT_EQ(lhs, rhs) << x << " " << y;
      const auto rep = verify_claim2(x, y, 8, s.table);
      ASSERT_TRUE(rep.claim2_holds);
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 0);
}

TEST(VerifyClaim2, AgreesWithDirectValuationsOnRandomPairs) {
  std::mt19937_64 rng(31);
  const Fixture s(12);
  const BigInt M = s.M.to_integer();
  int differing = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const BigInt x = big(1 + rng() % 100000), y = big(1 + rng() % 100000);
    const auto [lhs, rhs] = direct_sides(x, y, 12, M);
    const auto rep = verify_claim2(x, y, 12, s.table);
    for (const auto& c : rep.per_prime) {
      ASSERT_EQ(c.lhs, vp(lhs, c.p)) << x << " " << y << " p=" << c.p;
      ASSERT_EQ(c.rhs, vp(rhs, c.p));
    }
    ASSERT_EQ(rep.claim2_holds, lhs == rhs);
    differing += lhs != rhs;
  }
  // unconstrained pairs usually break the identity
  EXPECT_GT(differing, 250);
}

TEST(VerifyClaim2, WindowViolationIsCaught) {
  const Fixture s(8);
  const BigInt M = s.M.to_integer(), m = s.m.to_integer();
  int caught = 0;
  for (BigInt x = 1; x < M; x += m) {
    const u64 r7 = window_residue(x, 7);
    if (s.windows.find(7)->a.contains(r7)) continue;
    const BigInt y = 7 * 8 * 15;  // b = p everywhere
    ASSERT_TRUE(in_windows(s, y, false));
    const auto rep = verify_claim2(x, y, 8, s.table);
    EXPECT_FALSE(rep.claim2_holds) << x;
    caught += !rep.claim2_holds;
  }
  EXPECT_GT(caught, 0);
}

TEST(CertifyRatio, MatchesDirectLcmRatio) {
  const Fixture s(8);
  const BigInt x = 457, y = 560;  // x = 1 mod 8, y = 0 mod 8, residues in their windows
  ASSERT_TRUE(in_windows(s, x, true));
  ASSERT_TRUE(in_windows(s, y, false));
  auto rep = verify_claim2(x, y, 8, s.table);
  ASSERT_TRUE(rep.claim2_holds);
  certify_ratio(rep, x, y, 8, 1, s.M);
  Rational direct(oracle::lcm_fold(x, x + 7), oracle::lcm_fold(y, y + 8));
  direct.canonicalize();
  EXPECT_EQ(*rep.ratio, direct);
  EXPECT_EQ(rep.verdict, *rep.ratio > 1);
  EXPECT_TRUE(rep.bound_chain->ratio_at_least_product);
}

TEST(CertifyRatio, ProtocolErrorBeforeClaim2) {
  const Fixture s(8);
  auto rep = verify_claim2(BigInt(2), BigInt(3), 8, s.table);
  ASSERT_FALSE(rep.claim2_holds);
  try {
    certify_ratio(rep, BigInt(2), BigInt(3), 8, 1, s.M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Protocol);
  }
}

TEST(ConstructWitness, SmallestFeasibleKForC10) {
  for (u64 k = 4; k <= 20; ++k) EXPECT_THROW(construct_witness(k, 10), Error) << k;
  const auto cert = construct_witness(21, 10);
  EXPECT_TRUE(cert.report.verdict);
  EXPECT_GT(cert.y - cert.x, 21);
  EXPECT_GT(*cert.report.ratio, 10);
  EXPECT_TRUE(cert.report.bound_chain->holds());
  // independent recomputation of the ratio
  Rational direct(oracle::lcm_fold(cert.x, cert.x + 20), oracle::lcm_fold(cert.y, cert.y + 21));
  direct.canonicalize();
  EXPECT_EQ(*cert.report.ratio, direct);
  EXPECT_EQ(cert.M.to_integer(), oracle::lcm_fold(1, 21));
}

TEST(ConstructWitness, PropertiesAcrossK) {
  for (u64 k : {24u, 31u, 45u, 59u, 100u, 150u}) {
    for (u64 C : {1u, 2u, 10u}) {
      WitnessCertificate cert;
      try {
        cert = construct_witness(k, C);
      } catch (const Error& e) {
        EXPECT_TRUE(e.kind() == ErrorKind::ConstructionFailed || e.kind() == ErrorKind::SelectionFailed);
        continue;
      }
      const BigInt M = cert.M.to_integer(), m = cert.m.to_integer();
      EXPECT_TRUE(cert.report.verdict);
      EXPECT_TRUE(cert.report.claim2_holds);
      EXPECT_TRUE(cert.report.bound_chain->holds());
      EXPECT_GT(cert.x, 0);
      EXPECT_LT(cert.x, cert.y);
      EXPECT_LT(cert.y, M);
      EXPECT_GE(cert.y - cert.x, m - 1);
      EXPECT_EQ(cert.x % m, 1);
      EXPECT_EQ(cert.y % m, 0);
      EXPECT_EQ(cert.y % (M / (big(cert.y_primes[0]) * big(cert.y_primes[1]))), 0);
      EXPECT_EQ((cert.x - 1) % (M / (big(cert.x_primes[0]) * big(cert.x_primes[1]) * big(cert.x_primes[2]))),
                0);
      EXPECT_GT(cert.report.bound_chain->m_over_y_plus_k, 4 * C);
      EXPECT_TRUE(verify_certificate(cert).accepted);
    }
  }
  // C = 10 at k = 100 must succeed
  EXPECT_NO_THROW(construct_witness(100, 10));
}

TEST(ConstructWitness, SerialAndParallelAgree) {
  ConstructionConfig serial;
  serial.search.parallel = false;
  for (u64 k : {21u, 60u, 120u}) {
    const auto a = construct_witness(k, 10, serial);
    for (unsigned shards : {1u, 4u, 16u}) {
      ConstructionConfig par;
      par.search.shards = shards;
      const auto b = construct_witness(k, 10, par);
      EXPECT_EQ(a.x, b.x);
      EXPECT_EQ(a.y, b.y);
      EXPECT_EQ(a.transcript, b.transcript);
    }
  }
}

TEST(ConstructWitness, RejectsBadArguments) {
  EXPECT_THROW(construct_witness(3, 10), Error);
  EXPECT_THROW(construct_witness(50, 0), Error);
  ConstructionConfig c;
  c.epsilon_cap = Rational(3, 4);
  EXPECT_THROW(construct_witness(50, 1, c), Error);
}

}  // namespace
}  // namespace lcmwit
