#include <gtest/gtest.h>

#include <cmath>

#include "chevalley/constants.hpp"

using namespace chev;

namespace {

// Independent oracle: ln of an integer through double arithmetic on the
// base, not through the LogScaled routes.
double ln_pow(double base, double expo) { return expo * std::log(base); }

}  // namespace

TEST(Constants, ClgExamples) {
  auto c = clg_constants(2, 1);
  EXPECT_NEAR(c.C1.ln_double(), 152 * std::log(4.0), 1e-9);
  EXPECT_EQ(c.C1.ln_str(), "210.71674289");
  ASSERT_TRUE(c.C2.exact);
  EXPECT_EQ(*c.C2.exact, Rational(ipow(BigInt(4), 84) + 2));
  auto one = clg_constants(1, 1);
  EXPECT_EQ(*one.C1.exact, Rational(ipow(BigInt(2), 38)));
  EXPECT_EQ(*one.C2.exact, Rational(ipow(BigInt(2), 21) + 2));
  EXPECT_TRUE(clg_constants(3, 5).C1.exact);
  EXPECT_FALSE(clg_constants(4, 5).C1.exact);
}

TEST(Constants, TorusExamples) {
  auto c = torus_constants(2, 1);
  EXPECT_NEAR(c.C2.ln_double(), ln_pow(4, 359), 1e-9);
  EXPECT_EQ(*c.C1_full.exact, Rational(ipow(BigInt(4), 76)));
  EXPECT_EQ(*c.C1.exact * 6, *c.C1_full.exact);
  try {
    torus_constants(1, 1);
    FAIL() << "expected RankTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Err::RankTooSmall);
  }
}

TEST(Constants, GrowthPairExamples) {
  auto p = growth_pairs(2, 1);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0].m.ln_double(), ln_pow(4, 360), 1e-9);
  EXPECT_EQ(p[0].eps, Rational(1, 80));
  // 22 r^2 = 88 at r = 2
  EXPECT_EQ(*p[1].m.exact, Rational(ipow(BigInt(4), 88) + 8));
  EXPECT_EQ(p[1].eps, Rational(1, 352));
  auto q = growth_pairs(1, 5);
  EXPECT_EQ(*q[0].m.exact, Rational(ipow(BigInt(2), 45) * 5));
  EXPECT_EQ(q[0].eps, Rational(1, 40));
}

TEST(Constants, DiameterExponent) {
  EXPECT_NEAR(double(diameter_exponent(2).exponent), 1947.0 * 16 * std::log(4.0), 1e-6);
  EXPECT_NEAR(double(diameter_exponent(1).exponent), 1947.0 * std::log(2.0), 1e-9);
  EXPECT_NEAR(double(diameter_exponent(1).exponent), 1349.6, 0.05);
  EXPECT_EQ(*diameter_exponent(2).q_threshold.exact, Rational(16777216));
}

TEST(Constants, ExactAndLogAgreeForSmallRank) {
  for (int r = 1; r <= 2; ++r)
    for (long long t : {1LL, 7LL, 1000LL}) {
      auto c = clg_constants(r, t);
      ASSERT_TRUE(c.C1.exact && c.C2.exact);
      EXPECT_TRUE(c.C1.agrees());
      EXPECT_TRUE(c.C2.agrees());
      if (r >= 2) {
        auto tc = torus_constants(r, t);
        ASSERT_TRUE(tc.C1.exact && tc.C2.exact && tc.C1_full.exact);
        EXPECT_TRUE(tc.C1.agrees() && tc.C2.agrees() && tc.C1_full.agrees());
      }
      for (const auto& p : growth_pairs(r, t)) {
        ASSERT_TRUE(p.m.exact);
        EXPECT_TRUE(p.m.agrees());
      }
      auto d = diameter_exponent(r);
      EXPECT_TRUE(d.q_threshold.agrees());
    }
}

TEST(Constants, MonotoneInRankAndT) {
  for (int r = 1; r < 30; ++r) {
    EXPECT_LT(clg_constants(r, 3).C1.ln, clg_constants(r + 1, 3).C1.ln);
    EXPECT_LT(clg_constants(r, 3).C2.ln, clg_constants(r + 1, 3).C2.ln);
    EXPECT_NE(ls_compare(clg_constants(r, 3).C2, clg_constants(r, 4).C2), Cmp::Greater);
    EXPECT_LT(growth_pairs(r, 2)[0].m.ln, growth_pairs(r + 1, 2)[0].m.ln);
    EXPECT_NE(ls_compare(growth_pairs(r, 2)[1].m, growth_pairs(r, 3)[1].m), Cmp::Greater);
    EXPECT_GT(growth_pairs(r, 2)[0].eps, growth_pairs(r + 1, 2)[0].eps);
    EXPECT_LT(diameter_exponent(r).exponent, diameter_exponent(r + 1).exponent);
    if (r >= 2) {
      EXPECT_LT(torus_constants(r, 3).C2.ln, torus_constants(r + 1, 3).C2.ln);
      EXPECT_NE(ls_compare(torus_constants(r, 3).C2, torus_constants(r, 4).C2), Cmp::Greater);
      EXPECT_LT(torus_constants(r, 3).C1_full.ln, torus_constants(r + 1, 3).C1_full.ln);
    }
  }
  // strict in t where exact values exist
  EXPECT_EQ(ls_compare(clg_constants(2, 3).C2, clg_constants(2, 4).C2), Cmp::Less);
  EXPECT_EQ(ls_compare(growth_pairs(2, 2)[1].m, growth_pairs(2, 3)[1].m), Cmp::Less);
  EXPECT_EQ(ls_compare(torus_constants(2, 3).C2, torus_constants(2, 4).C2), Cmp::Less);
}

TEST(Constants, FibreBound) {
  // SL_2: 8^3 * 2^8 = 2^17, the relaxation is tight
  auto b = fibre_bound(group_params(Family::SL, 2));
  EXPECT_EQ(*b.intermediate.exact, Rational(ipow(BigInt(2), 17)));
  EXPECT_TRUE(b.holds);
  for (auto [f, n] : {std::pair{Family::SL, 3}, {Family::SL, 4}, {Family::Sp, 2}, {Family::Sp, 3},
                      {Family::SOodd, 3}, {Family::SOeven, 4}})
    EXPECT_TRUE(fibre_bound(group_params(f, n)).holds) << group_params(f, n).name();
}

TEST(Constants, ProofInequalitySuite) {
  auto rep = proof_inequality_suite(64);
  EXPECT_GT(rep.checks.size(), 64u * 20);
  for (const auto& c : rep.checks)
    EXPECT_TRUE(c.pass) << c.name << " r=" << c.r << " " << c.lhs << " vs " << c.rhs;
  EXPECT_NO_THROW(rep.require_ok("suite"));
}

TEST(Constants, RationalIdentityAtEll4) {
  Rational L = 4;
  Rational lhs = (1 - 1 / L) * (1 - 1 / (6 * L)) + 1 / (L + 1);
  EXPECT_EQ(lhs, 1 - Rational(16 + 24 - 1, 6 * 16 * 5));
}

TEST(Constants, AsymptoticConstants) {
  auto a = asymptotic_constants(8);
  EXPECT_NEAR(double(a.eta), 4 * std::log(2.0) / (9 * std::log(3.0)), 1e-12);
  EXPECT_NEAR(double(a.eta), 0.2804, 1e-4);
  EXPECT_NEAR(double(a.kappa), 0.04563, 1e-4);
  EXPECT_EQ(a.limit, 384);
  auto far = asymptotic_constants(100000);
  EXPECT_NEAR(double(far.c_pair1), 384.0, 0.01);
  EXPECT_NEAR(double(far.c_r), 384.0, 0.01);
  EXPECT_NEAR(double(far.c_pair2), double(far.pair2_limit), 0.01);
  EXPECT_THROW(asymptotic_constants(7), Error);
}

TEST(Constants, AppendixExamples) {
  EXPECT_EQ(appendix_e(2, 1), 19);
  EXPECT_EQ(appendix_k(2), 2 * ipow(BigInt(5), 25));
  EXPECT_EQ(appendix_f(3, 2), 72);
  auto a = appendix_constants(2, 1, 3, 1);
  EXPECT_EQ(a.e_d, 19);
  // C_2(1, 1) = (2^19 - 1) k + 2^19
  EXPECT_EQ(a.C2, (ipow(BigInt(2), 19) - 1) * appendix_k(2) + ipow(BigInt(2), 19));
  // ln ln C_1(1, 3) = 14 * 16 ln 2 + ln ln 6
  Tower lnln = a.C1.ln().ln();
  EXPECT_EQ(lnln.h, 0);
  EXPECT_NEAR(lnln.x, 224 * std::log(2.0) + std::log(std::log(6.0)), 1e-9);
}

TEST(Constants, AppendixEIsIntegral) {
  for (int r = 1; r <= 6; ++r)
    for (int x = 0; x < 2 * r * r + r; ++x)
      EXPECT_EQ(BigInt(x + 1) * (4 * r * r + 2 * r - x) % 2, 0);
}

TEST(Constants, AppendixChainsUpToRank4) {
  auto rep = appendix_suite(4);
  EXPECT_GT(rep.checks.size(), 1000u);
  for (const auto& c : rep.checks)
    EXPECT_TRUE(c.pass) << c.name << " r=" << c.r << " " << c.lhs << " vs " << c.rhs;
}

TEST(Constants, AppendixRejectsBadD) {
  EXPECT_THROW(appendix_constants(2, 10, 1, 1), Error);
  EXPECT_THROW(appendix_constants(2, -1, 1, 1), Error);
}
