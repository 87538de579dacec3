#include <gtest/gtest.h>

#include "chevalley/ball.hpp"
#include "chevalley/groups.hpp"

using namespace chev;

TEST(Groups, TableRows) {
  auto sp = group_params(Family::Sp, 2);
  EXPECT_EQ(sp.r, 2);
  EXPECT_EQ(sp.N, 4);
  EXPECT_EQ(sp.dim, 10);
  EXPECT_EQ(sp.ell, 5);
  EXPECT_EQ(*sp.deg_bound.exact, Rational(256));
  auto sl = group_params(Family::SL, 3);
  EXPECT_EQ(sl.r, 2);
  EXPECT_EQ(sl.N, 3);
  EXPECT_EQ(sl.dim, 8);
  EXPECT_EQ(sl.ell, 4);
  EXPECT_EQ(*sl.deg_bound.exact, Rational(3));
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::SOeven, 3}, {Family::Sp, 1}, {Family::SOodd, 2}}) {
    try {
      group_params(f, n);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), Err::InadmissibleFamilyParameter);
    }
  }
  // every row satisfies ell * r = dim
  for (auto f : {Family::SL, Family::SOeven, Family::SOodd, Family::Sp})
    for (int n = 4; n <= 9; ++n) {
      auto g = group_params(f, n);
      EXPECT_EQ(g.ell * g.r, g.dim);
    }
}

TEST(Groups, Membership) {
  auto F = make_field(5);
  auto sl2 = group_params(Family::SL, 2);
  Mat d(2);
  d(0, 0) = 2;
  d(1, 1) = 3;
  EXPECT_TRUE(is_member(*F, sl2, d));
  d(1, 1) = 2;
  EXPECT_FALSE(is_member(*F, sl2, d));
  EXPECT_TRUE(is_member(*F, group_params(Family::Sp, 2), identity(4)));
  EXPECT_THROW(is_member(*F, sl2, identity(3)), Error);
}

TEST(Groups, OrderFormulas) {
  auto sl2 = group_params(Family::SL, 2);
  EXPECT_EQ(group_order(sl2, 5), 120);
  EXPECT_EQ(group_order(group_params(Family::Sp, 2), 3), 51840);
  EXPECT_EQ(group_order(group_params(Family::SL, 3), 5), 372000);
  EXPECT_THROW(group_order(sl2, 4), Error);
  EXPECT_THROW(group_order(sl2, 6), Error);
}

TEST(Groups, OrderMatchesClosure) {
  for (std::uint64_t q : {3, 5, 7, 9}) {
    auto F = make_field_q(q);
    auto u = materialize(F, group_params(Family::SL, 2));
    EXPECT_EQ(BigInt(u.order()), group_order(u.spec, q));
  }
}

TEST(Groups, LieAlgebraCount) {
  auto F3 = make_field(3);
  auto sl2 = group_params(Family::SL, 2);
  EXPECT_EQ(lie_algebra_count(sl2, 3), 27);
  EXPECT_EQ(lie_algebra_enumerate(*F3, sl2), 27u);
  EXPECT_EQ(lie_algebra_count(group_params(Family::Sp, 2), 3), ipow(3, 10));
  EXPECT_EQ(lie_algebra_count(group_params(Family::SOodd, 3), 5), ipow(5, 21));
  // so_3 toy and sp_2 toy by enumeration
  auto so3 = group_params_unchecked(Family::SOodd, 1);
  EXPECT_EQ(BigInt(lie_algebra_enumerate(*F3, so3)), lie_algebra_count(so3, 3));
  auto sp2 = group_params_unchecked(Family::Sp, 1);
  EXPECT_EQ(BigInt(lie_algebra_enumerate(*F3, sp2)), lie_algebra_count(sp2, 3));
  // basis sizes equal dim
  for (auto f : {Family::SL, Family::SOeven, Family::SOodd, Family::Sp}) {
    auto g = group_params(f, 4);
    EXPECT_EQ(int(lie_basis(*F3, g).size()), g.dim);
    for (const auto& b : lie_basis(*F3, g))
      EXPECT_TRUE(is_lie_member(*F3, g, b));
  }
}

TEST(Groups, CayleyMap) {
  auto F = make_field(5);
  auto so3 = group_params_unchecked(Family::SOodd, 1);
  EXPECT_EQ(cayley_map(*F, Family::SOodd, Mat(3)), identity(3));
  Mat x(3);
  x(0, 1) = 1;
  x(1, 0) = 4;
  Mat m = cayley_map(*F, Family::SOodd, x);
  EXPECT_EQ(mat_mul(*F, transpose(m), m), identity(3));
  EXPECT_EQ(det(*F, m), 1u);
  EXPECT_TRUE(is_member(*F, so3, m));
  EXPECT_EQ(cayley_map(*F, Family::SOodd, m), x);
  EXPECT_THROW(cayley_map(*F, Family::SL, Mat(2)), Error);
  Mat neg = mat_scale(*F, F->neg(1), identity(3));
  try {
    cayley_map(*F, Family::SOodd, neg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Err::SingularShift);
  }
}

TEST(Groups, CayleyInvolutionRandom) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::SOodd, 3}, {Family::Sp, 2}, {Family::SOeven, 4}})
    for (std::uint64_t q : {5, 7}) {
      auto F = make_field_q(q);
      auto g = group_params(f, n);
      auto rng = stream(3, q);
      int tried = 0;
      for (int t = 0; t < 1000; ++t) {
        Mat x = random_lie_element(*F, g, rng);
        Mat inv;
        if (!try_inverse(*F, mat_add(*F, identity(g.N), x), inv))
          continue;
        ++tried;
        Mat y = cayley_map(*F, f, x);
        ASSERT_TRUE(is_member(*F, g, y));
        ASSERT_EQ(cayley_map(*F, f, y), x);
      }
      EXPECT_GT(tried, 500);
    }
}

// The Cayley domain count q^dim - |g cap Z| for so_3 toys: no nonzero scalar
// is skew, so exactly the x with det(Id + x) != 0 map into SO_3 \ {-Id}.
TEST(Groups, CayleyDomainCountSo3) {
  for (std::uint64_t q : {3, 5, 7}) {
    auto F = make_field_q(q);
    auto g = group_params_unchecked(Family::SOodd, 1);
    std::uint64_t count = 0, singular = 0;
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) {
          Mat x(3);
          x(0, 1) = a, x(1, 0) = F->neg(a);
          x(0, 2) = b, x(2, 0) = F->neg(b);
          x(1, 2) = c, x(2, 1) = F->neg(c);
          Mat inv;
          if (try_inverse(*F, mat_add(*F, identity(3), x), inv))
            ++count;
          else
            ++singular;
        }
    // det(Id + x) = 1 + a^2 + b^2 + c^2
    std::uint64_t expect_singular = 0;
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c)
          if (F->add(1, F->add(F->mul(a, a), F->add(F->mul(b, b), F->mul(c, c)))) == 0)
            ++expect_singular;
    EXPECT_EQ(singular, expect_singular);
    EXPECT_EQ(count + singular, q * q * q);
  }
}

TEST(Groups, ClosureRandom) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::SL, 3}, {Family::Sp, 2}, {Family::SOodd, 3}, {Family::SOeven, 4}})
    for (std::uint64_t q : {5, 7}) {
      auto F = make_field_q(q);
      auto g = group_params(f, n);
      auto rng = stream(11, q * 10 + int(f));
      for (int t = 0; t < 1000; ++t) {
        Mat a = random_group_element(*F, g, rng), b = random_group_element(*F, g, rng);
        ASSERT_TRUE(is_member(*F, g, a));
        ASSERT_TRUE(is_member(*F, g, mat_mul(*F, a, b)));
        ASSERT_TRUE(is_member(*F, g, inverse(*F, a)));
      }
    }
}

TEST(Groups, TorusBasis) {
  auto F = make_field(5);
  auto sl3 = group_params(Family::SL, 3);
  auto b = canonical_torus_lie_basis(*F, TorusSpec{sl3, {}});
  EXPECT_EQ(b.size(), 2u);
  for (const auto& m : b)
    EXPECT_EQ(trace(*F, m), 0u);
  auto sp4 = group_params(Family::Sp, 2);
  auto c = canonical_torus_lie_basis(*F, TorusSpec{sp4, {0, 1}});
  ASSERT_EQ(c.size(), 1u);
  Mat want(4);
  want(0, 0) = 1;
  want(2, 2) = 4;
  EXPECT_EQ(c[0], want);
  try {
    canonical_torus_lie_basis(*F, TorusSpec{sp4, {1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Err::BadEta);
  }
}

TEST(Groups, Weyl) {
  EXPECT_EQ(weyl_order(group_params(Family::SL, 4)), 24);
  EXPECT_EQ(weyl_order(group_params(Family::SOeven, 4)), 192);
  EXPECT_EQ(weyl_order(group_params(Family::Sp, 2)), 8);
  for (auto f : {Family::SOeven, Family::SOodd, Family::Sp})
    for (int n = 4; n < 8; ++n) {
      auto g = group_params(f, n);
      EXPECT_LE(weyl_order(g), factorial(g.r) * ipow(2, g.r));
    }
}

// |G| / ((q-1)^r q^{#pos roots}) is a multiple of |W| for split SL.
TEST(Groups, WeylDividesOrderRatio) {
  for (int n = 2; n <= 5; ++n)
    for (std::uint64_t q : {3, 5, 7, 11}) {
      auto g = group_params(Family::SL, n);
      BigInt denom = ipow(BigInt(q - 1), g.r) * ipow(BigInt(q), n * (n - 1) / 2);
      BigInt ord = group_order(g, q);
      ASSERT_EQ(ord % denom, 0);
    }
}

TEST(Groups, TorusConjugateBound) {
  EXPECT_EQ(torus_conjugate_count_bound(group_params(Family::SL, 2), 7), 18);
  EXPECT_EQ(torus_conjugate_count_bound(group_params(Family::SL, 2), 5), 8);
  EXPECT_EQ(torus_conjugate_count_bound(group_params(Family::Sp, 2), 3), 32);
}

TEST(Groups, Hypotheses) {
  auto r1 = hypotheses_ok(group_params(Family::Sp, 2), 5, Theorem::main);
  EXPECT_FALSE(r1.ok());
  EXPECT_TRUE(r1.checks[1].holds);   // 5 > 4
  EXPECT_FALSE(r1.checks[2].holds);  // 5 < 4^12
  EXPECT_EQ(r1.checks[2].threshold, "16777216");
  EXPECT_TRUE(hypotheses_ok(group_params(Family::SL, 2), 101, Theorem::escape_point).ok());
  auto r3 = hypotheses_ok(group_params(Family::SL, 3), 3, Theorem::main);
  EXPECT_FALSE(r3.checks[1].holds);
}

TEST(Groups, SoIdentityForm) {
  // SO_8 over F_3: r = 4 even, plus type; the form x^T x on F_3^2 is minus type
  auto so8 = group_params(Family::SOeven, 4);
  EXPECT_EQ(so_identity_form_order(so8, 3), group_order(so8, 3));
  auto so10 = group_params(Family::SOeven, 5);
  EXPECT_NE(so_identity_form_order(so10, 3), group_order(so10, 3));
  EXPECT_EQ(so_identity_form_order(so10, 5), group_order(so10, 5));
  // SO_2 toy: |SO_2(F_q)| = q - chi(-1), by enumeration
  for (std::uint64_t q : {3, 5, 7, 11, 13}) {
    auto F = make_field_q(q);
    std::uint64_t c = 0;
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        if (F->add(F->mul(a, a), F->mul(b, b)) == 1)
          ++c;
    auto toy = group_params_unchecked(Family::SOeven, 1);
    EXPECT_EQ(BigInt(c), so_identity_form_order(toy, q));
  }
}

TEST(Groups, GroupRefRoundTrip) {
  auto ref = parse_group_ref("Sp:2:9");
  EXPECT_EQ(ref.field->q(), 9u);
  EXPECT_EQ(ref.str(), "Sp:2:9:1:0:1");
  EXPECT_EQ(parse_group_ref(ref.str()).str(), ref.str());
  EXPECT_THROW(parse_group_ref("SL:2"), Error);
}
