#include <gtest/gtest.h>

#include "chevalley/rng.hpp"
#include "chevalley/varieties.hpp"

using namespace chev;

TEST(Varieties, Evaluate) {
  auto F5 = make_field(5), F7 = make_field(7);
  auto p = parse_poly(*F5, "x1*x2 - 1", 2);
  EXPECT_EQ(evaluate(*F5, p, {2, 3}), 0u);
  auto d = parse_poly(*F5, "x1*x4 - x2*x3 - 1", 4);
  EXPECT_EQ(evaluate(*F5, d, {1, 0, 0, 1}), 0u);
  auto c = parse_poly(*F7, "x1^2 + x2^2 \xE2\x88\x92 1", 2);
  EXPECT_EQ(evaluate(*F7, c, {1, 1}), 1u);
  EXPECT_THROW(evaluate(*F7, c, {1}), Error);
}

TEST(Varieties, ParseErrors) {
  auto F = make_field(5);
  EXPECT_THROW(parse_poly(*F, "", 2), Error);
  EXPECT_THROW(parse_poly(*F, "x3", 2), Error);
  EXPECT_THROW(parse_poly(*F, "x1 +", 2), Error);
  auto p = parse_poly(*F, "3*x2*x1^2 + 2", 2);
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(parse_poly(*F, format_poly(*F, p), 2).terms, p.terms);
}

TEST(Varieties, PointCounts) {
  auto F5 = make_field(5), F7 = make_field(7);
  auto hyp = make_variety(2, {parse_poly(*F5, "x1*x2 - 1", 2)}, 1, 2);
  auto r = point_count(*F5, hyp);
  EXPECT_EQ(r.count, 4u);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(*r.bound.exact, Rational(10));
  auto line = make_variety(2, {parse_poly(*F7, "x1", 2)}, 1, 1);
  auto r2 = point_count(*F7, line);
  EXPECT_EQ(r2.count, 7u);
  EXPECT_EQ(*r2.bound.exact, Rational(7));
  auto circ = make_variety(2, {parse_poly(*F5, "x1^2 + x2^2 - 1", 2)}, 1, 2);
  EXPECT_EQ(point_count(*F5, circ).count, 4u);
  auto big = make_variety(10, {}, 10, 1);
  EXPECT_THROW(point_count(*F7, big), Error);
}

TEST(Varieties, ThreadedCountMatches) {
  auto F = make_field(11);
  auto v = make_variety(5, {parse_poly(*F, "x1*x2 + x3^2 - x4*x5 - 1", 5)}, 4, 2);
  EXPECT_EQ(point_count(*F, v, 100000000, 1).count, point_count(*F, v, 100000000, 8).count);
}

TEST(Varieties, Bezout) {
  VarietySpec a{2, {}, 1, 2}, b{2, {}, 1, 3}, c{3, {}, 1, 3};
  EXPECT_EQ(*bezout_degree({a, b}, BezoutOp::intersect).exact, Rational(6));
  EXPECT_EQ(*bezout_degree({a, b}, BezoutOp::union_).exact, Rational(5));
  EXPECT_EQ(*bezout_degree({a, c}, BezoutOp::product).exact, Rational(6));
  EXPECT_THROW(bezout_degree({a, c}, BezoutOp::union_), Error);
  EXPECT_EQ(*image_degree_bound(VarietySpec{2, {}, 1, 3}, 1, 5).exact, Rational(3));
  EXPECT_EQ(*image_degree_bound(VarietySpec{2, {}, 1, 2}, 2, 3).exact, Rational(16));
  EXPECT_EQ(*image_degree_bound(VarietySpec{2, {}, 1, 5}, 4, 0).exact, Rational(5));
  EXPECT_EQ(*intersection_chain_budget(2, 3).exact, Rational(27));
  EXPECT_EQ(*intersection_chain_budget(0, 7).exact, Rational(7));
  EXPECT_EQ(*intersection_chain_budget(3, 1).exact, Rational(1));
}

TEST(Varieties, DeclaredDegreeChecked) {
  auto F = make_field(5);
  EXPECT_THROW(make_variety(2, {parse_poly(*F, "x1", 2)}, 1, 2), Error);
  EXPECT_THROW(make_variety(2, {}, 3, 1), Error);
  auto v = parse_variety(*F, "# circle\nambient=2 dim=1 deg=2\nx1^2 + x2^2 - 1\n");
  EXPECT_EQ(v.polys.size(), 1u);
  EXPECT_THROW(parse_variety(*F, "x1\n"), Error);
}

// Random low-degree varieties in ambients <= 3 respect |V(F_q)| <= D q^d with
// d the dimension of a hypersurface (ambient - 1) and D its Bezout budget.
TEST(Varieties, PointBoundRandomized) {
  int cases = 0;
  for (std::uint64_t q : {3, 5, 7}) {
    auto F = make_field_q(q);
    auto rng = stream(99, q);
    for (int t = 0; t < 20; ++t) {
      int m = 1 + int(uniform_index(rng, 3));
      int deg = 1 + int(uniform_index(rng, 2));
      Poly p = poly_const(m, 0);
      for (int term = 0; term < 4; ++term) {
        std::vector<int> e(m, 0);
        int budget = int(uniform_index(rng, deg + 1));
        for (int s = 0; s < budget; ++s)
          e[uniform_index(rng, m)]++;
        poly_add_term(*F, p, e, static_cast<std::uint32_t>(uniform_index(rng, q)));
      }
      // force degree deg on x1 so the polynomial is not constant
      std::vector<int> lead(m, 0);
      lead[0] = deg;
      poly_add_term(*F, p, lead, 1);
      if (p.degree() < 1)
        continue;
      auto v = make_variety(m, {p}, m - 1, p.degree());
      auto r = point_count(*F, v);
      EXPECT_TRUE(r.holds);
      ++cases;
    }
  }
  EXPECT_GE(cases, 50);
}

// Adding a polynomial never raises the Bezout budget for the same declared dim.
TEST(Varieties, BudgetMonotone) {
  auto F = make_field(5);
  auto one = make_variety(2, {parse_poly(*F, "x1^2 - x2", 2)}, 1, 2);
  auto two = make_variety(2, {parse_poly(*F, "x1^2 - x2", 2), parse_poly(*F, "x1 - x2", 2)}, 0, 2);
  EXPECT_LE(point_count(*F, two).count, point_count(*F, one).count);
}
