#include <gtest/gtest.h>

#include <set>

#include "chevalley/growth.hpp"

using namespace chev;

namespace {

Mat from_rows(int n, std::initializer_list<std::uint32_t> v) {
  Mat m(n);
  m.a.assign(v.begin(), v.end());
  return m;
}

const Universe& sl2(std::uint64_t q) {
  static std::map<std::uint64_t, Universe> cache;
  auto it = cache.find(q);
  if (it == cache.end())
    it = cache.emplace(q, materialize(make_field_q(q), group_params(Family::SL, 2))).first;
  return it->second;
}

// Oracle: A^t by brute force products of t elements of A.
std::set<Mat> brute_power(const Field& F, const std::vector<Mat>& A, int t) {
  std::set<Mat> cur(A.begin(), A.end());
  for (int i = 1; i < t; ++i) {
    std::set<Mat> nxt;
    for (const auto& x : cur)
      for (const auto& a : A)
        nxt.insert(mat_mul(F, x, a));
    cur = std::move(nxt);
  }
  return cur;
}

template <class F>
void expect_err(Err kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << err_name(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Growth, NpThreshold) {
  // 27 * 798^3 >= 64 * 11^8 > 27 * 797^3
  auto g = group_params(Family::SL, 2);
  EXPECT_EQ(np_threshold(g, 11), 798);
  BigInt rhs = 64 * ipow(BigInt(11), 8);
  EXPECT_GE(27 * ipow(BigInt(798), 3), rhs);
  EXPECT_LT(27 * ipow(BigInt(797), 3), rhs);
  expect_err(Err::HypothesisFailed, [&] { np_threshold(g, 7); });
  expect_err(Err::HypothesisFailed, [&] { np_threshold(g, 9); });
  expect_err(Err::HypothesisFailed, [&] { np_threshold(g, 16); });
}

TEST(Growth, GenSetValidation) {
  auto F = make_field_q(5);
  auto g = group_params(Family::SL, 2);
  Mat a = from_rows(2, {1, 1, 0, 1});
  expect_err(Err::HypothesisFailed, [&] { make_genset(F, g, {identity(2), a}); });
  expect_err(Err::HypothesisFailed, [&] { make_genset(F, g, {a, inverse(*F, a)}); });
  expect_err(Err::HypothesisFailed, [&] { make_genset(F, g, {identity(2), from_rows(2, {2, 0, 0, 2})}); });
  auto A = make_genset(F, g, symmetrize(*F, {a}));
  EXPECT_TRUE(A.symmetric);
  EXPECT_EQ(A.elems.size(), 3u);
  auto B = make_genset(F, g, {a}, false);
  EXPECT_FALSE(B.symmetric);
}

TEST(Growth, MatrixListRoundTrip) {
  auto F = make_field_q(7);
  std::string text = "# two generators\n1,1,0,1\n\n1,0,1,1\n";
  auto ms = parse_matrix_list(*F, text, 2);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0], from_rows(2, {1, 1, 0, 1}));
  EXPECT_EQ(ms[1], from_rows(2, {1, 0, 1, 1}));
}

TEST(Growth, IdentityAloneIsNotGenerating) {
  auto F = make_field_q(5);
  auto A = make_genset(F, group_params(Family::SL, 2), {identity(2)});
  auto s = ball_series(A, 5);
  EXPECT_FALSE(s.generating());
  ASSERT_TRUE(s.closed_at);
  EXPECT_EQ(*s.closed_at, 1);
  expect_err(Err::NotGenerating, [&] { diameter(A); });
}

TEST(Growth, WholeGroupHasDiameterOne) {
  const auto& u = sl2(5);
  auto A = make_genset(u.F, u.spec, u.elems);
  EXPECT_EQ(diameter(A), 1);
  auto s = ball_series(A, 3);
  EXPECT_EQ(s.saturated_at, 1);
}

TEST(Growth, BallSeriesMatchesBruteForce) {
  const auto& u = sl2(5);
  for (int i = 0; i < 10; ++i) {
    auto rng = stream(11, i);
    auto A = random_genset(u, 2, rng);
    auto s = ball_series(A, 4);
    for (int t = 1; t <= int(s.sizes.size()); ++t)
      EXPECT_EQ(s.sizes[t - 1], brute_power(*u.F, A.elems, t).size());
  }
}

// Strictly increasing before saturation; a repeat means saturation.
TEST(Growth, SeriesStrictUntilClosure) {
  const auto& u = sl2(7);
  for (int i = 0; i < 40; ++i) {
    auto rng = stream(21, i);
    auto A = random_genset(u, 1 + int(i % 3), rng);
    auto s = ball_series(A, 40);
    for (std::size_t t = 1; t < s.sizes.size(); ++t) {
      EXPECT_GE(s.sizes[t], s.sizes[t - 1]);
      if (s.sizes[t] == s.sizes[t - 1]) {
        ASSERT_TRUE(s.closed_at);
        EXPECT_LE(*s.closed_at, int(t));
      }
    }
    if (s.generating()) {
      EXPECT_EQ(s.sizes[*s.saturated_at - 1], 336u);
    }
  }
}

// |A^a A^b| = |A^{a+b}| on BFS layers.
TEST(Growth, LayerProductsAreConsistent) {
  const auto& u = sl2(7);
  auto rng = stream(5, 0);
  auto A = random_genset(u, 2, rng);
  Ball b(A.F, A.elems, {});
  b.grow_to(6);
  const auto& el = b.elements();
  for (auto [x, y] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    std::set<Mat> prod;
    for (std::size_t i = 0; i < b.size_at(x); ++i)
      for (std::size_t j = 0; j < b.size_at(y); ++j)
        prod.insert(mat_mul(*A.F, el[i], el[j]));
    EXPECT_EQ(prod.size(), ball_size_at(b, x + y)) << x << "+" << y;
  }
}

TEST(Growth, RuzsaAndOlsonCampaigns) {
  auto rep = ruzsa_olson_campaign(sl2(7), 60, 2, 0xabc);
  EXPECT_EQ(rep.sets, 60u);
  EXPECT_EQ(rep.ruzsa_checks, 180u);
  EXPECT_EQ(rep.ruzsa_violations, 0u);
  EXPECT_EQ(rep.olson_violations, 0u);
}

TEST(Growth, RuzsaArithmetic) {
  const auto& u = sl2(5);
  auto rng = stream(3, 3);
  auto A = random_genset(u, 1, rng);
  auto r = ruzsa_check(A, 4);
  EXPECT_EQ(r.lhs, BigInt(r.ak) * r.a1);
  EXPECT_EQ(r.rhs, BigInt(r.a3) * r.a3);
  EXPECT_EQ(r.pass, r.lhs <= r.rhs);
  expect_err(Err::UsageError, [&] { ruzsa_check(A, 2); });
}

TEST(Growth, NpCheck) {
  const auto& u = sl2(11);
  auto rep = np_campaign(u, 5, 77);
  EXPECT_EQ(rep.np_checked, 5u);
  auto rng = stream(1, 1);
  auto small = np_check(random_subset(u, 100, rng));
  EXPECT_FALSE(small.checked);
  EXPECT_NE(small.notice.find("below"), std::string::npos);
}

TEST(Growth, SaturatedCountsInSL2F5) {
  const auto& u = sl2(5);
  auto A = make_genset(u.F, u.spec, u.gens);
  int d = diameter(A);
  Target cls{TargetKind::class_of, from_rows(2, {2, 0, 0, 3}), {}};
  auto c = intersect_count(A, d, cls);
  EXPECT_TRUE(c.saturated);
  EXPECT_EQ(c.count, 30u);
  EXPECT_EQ(c.target_size, 30u);
  // orbit-stabilizer oracle
  EXPECT_EQ(conjugacy_class(u, cls.g).size() * centralizer(u, cls.g).size(), 120u);
  ASSERT_TRUE(c.measured_exponent);
  EXPECT_EQ(*c.measured_exponent, real_ln(30LL) / real_ln(120LL));
  EXPECT_EQ(c.dimV, 2);
  EXPECT_EQ(c.expected_exponent, Rational(2, 3));
  EXPECT_TRUE(c.bound_holds);

  Target tor{TargetKind::torus, {}, {}};
  auto t = intersect_count(A, d, tor);
  EXPECT_EQ(t.count, 4u);
  EXPECT_EQ(t.dimV, 1);
  EXPECT_FALSE(t.bound);  // no torus constants at rank 1

  Target nrs{TargetKind::nonrs_locus, {}, {}};
  auto n = intersect_count(A, d, nrs);
  EXPECT_EQ(n.count, 50u);  // 2 q^2
  EXPECT_TRUE(n.bound_holds);

  Target tn{TargetKind::torus_nonrs, {}, {}};
  EXPECT_EQ(intersect_count(A, d, tn).count, 2u);  // +-Id
}

TEST(Growth, CountsBelowSaturationAreMonotone) {
  const auto& u = sl2(7);
  auto A = make_genset(u.F, u.spec, u.gens);
  Target nrs{TargetKind::nonrs_locus, {}, {}};
  std::size_t prev = 0;
  int d = diameter(A);
  for (int t = 1; t <= d; ++t) {
    auto r = intersect_count(A, t, nrs);
    EXPECT_GE(r.count, prev);
    EXPECT_LE(r.count, r.ball_size);
    prev = r.count;
  }
  EXPECT_EQ(prev, 98u);
}

TEST(Growth, TorusWithCharacterCut) {
  auto F3 = make_field_q(3);
  auto u3 = materialize(F3, group_params(Family::SL, 3));
  auto A = make_genset(u3.F, u3.spec, u3.gens);
  Target full{TargetKind::torus, {}, {}};
  EXPECT_EQ(intersect_count(A, 20, full).count, 4u);  // (q-1)^2
  // x2 x3 = x1^{-1}, so the kernel is x1 = 1
  Target cut{TargetKind::torus, {}, {0, 1, 1}};
  auto r = intersect_count(A, 20, cut);
  EXPECT_EQ(r.dimV, 1);
  EXPECT_EQ(r.count, 2u);
}

TEST(Growth, DichotomyTakesSaturationBranch) {
  const auto& u = sl2(7);
  for (int i = 0; i < 5; ++i) {
    auto rng = stream(9, i);
    auto A = random_genset(u, 2, rng);
    Ball b(A.F, A.elems, {});
    b.saturate();
    if (b.size() != 336)
      continue;
    auto rep = growth_dichotomy_check(A, 1);
    EXPECT_TRUE(rep.ok());
    for (const auto& p : rep.pairs)
      EXPECT_TRUE(p.saturates);
  }
  // A = G, l = 1: |A^m| = |A^l| so the growth branch fails
  auto G = make_genset(u.F, u.spec, u.elems);
  auto rep = growth_dichotomy_check(G, 1);
  for (const auto& p : rep.pairs) {
    EXPECT_FALSE(p.grows);
    EXPECT_TRUE(p.saturates);
  }
}

TEST(Growth, ClassFibres) {
  const auto& u = sl2(5);
  auto r = class_fibre_check(u, from_rows(2, {2, 0, 0, 3}));
  EXPECT_EQ(r.class_size, 30u);
  EXPECT_GE(r.max_fibre, 1u);
  EXPECT_LE(r.max_fibre, 30u);
  EXPECT_TRUE(r.holds);
  // y = Id: every v qualifies
  EXPECT_EQ(r.max_fibre, 30u);
  // -Id maps the class onto itself (diag(3,2) ~ diag(2,3))
  EXPECT_EQ(r.max_nontrivial, 30u);
}
