#include <gtest/gtest.h>

#include "chevalley/classify.hpp"

using namespace chev;

namespace {

Mat diag(std::initializer_list<std::uint32_t> d) {
  Mat m(int(d.size()));
  int i = 0;
  for (auto v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

Mat from_rows(int n, std::initializer_list<std::uint32_t> v) {
  Mat m(n);
  m.a.assign(v.begin(), v.end());
  return m;
}

// Oracle: det(t Id - g) by evaluating at N+1 points and interpolating.
UPoly charpoly_by_interpolation(const Field& F, const Mat& g) {
  int n = g.n;
  std::vector<std::uint32_t> xs, ys;
  for (int t = 0; t <= n; ++t) {
    Mat m = mat_scale(F, F.neg(1), g);
    for (int i = 0; i < n; ++i)
      m(i, i) = F.add(m(i, i), F.from_int(t));
    xs.push_back(F.from_int(t));
    ys.push_back(det(F, m));
  }
  UPoly res(n + 1, 0);
  for (int j = 0; j <= n; ++j) {
    UPoly basis{1};
    std::uint32_t denom = 1;
    for (int m = 0; m <= n; ++m) {
      if (m == j)
        continue;
      UPoly nb(basis.size() + 1, 0);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        nb[k + 1] = F.add(nb[k + 1], basis[k]);
        nb[k] = F.sub(nb[k], F.mul(xs[m], basis[k]));
      }
      basis = nb;
      denom = F.mul(denom, F.sub(xs[j], xs[m]));
    }
    std::uint32_t c = F.div(ys[j], denom);
    for (std::size_t k = 0; k < basis.size(); ++k)
      res[k] = F.add(res[k], F.mul(c, basis[k]));
  }
  return res;
}

}  // namespace

TEST(Classify, CharPolyExamples) {
  auto F5 = make_field(5), F7 = make_field(7);
  auto id = char_poly(*F5, identity(2));
  EXPECT_EQ(id.coeffs, (UPoly{1, 3, 1}));
  EXPECT_EQ(id.disc, 0u);
  auto d = char_poly(*F5, diag({2, 3}));
  EXPECT_EQ(d.coeffs, (UPoly{1, 0, 1}));
  EXPECT_EQ(d.disc, 1u);
  EXPECT_EQ(char_poly(*F7, from_rows(2, {1, 1, 0, 1})).disc, 0u);
}

TEST(Classify, RegularSemisimple) {
  auto F5 = make_field(5), F7 = make_field(7);
  EXPECT_FALSE(is_regular_semisimple(*F5, identity(3)));
  EXPECT_TRUE(is_regular_semisimple(*F5, diag({2, 3})));
  EXPECT_FALSE(is_regular_semisimple(*F7, diag({2, 4, 4, 2})));
  Mat sp = diag({3, 2, 5, 4});
  EXPECT_TRUE(is_member(*F7, group_params(Family::Sp, 2), sp));
  EXPECT_TRUE(is_regular_semisimple(*F7, sp));
}

// Berkowitz vs interpolation; disc vs gcd vs split roots, on random elements.
TEST(Classify, ThreeWayRsAgreement) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::SL, 2}, {Family::SL, 3}, {Family::Sp, 2}})
    for (std::uint64_t q : {5, 7, 11}) {
      auto g = group_params(f, n);
      if (q <= std::uint64_t(g.N))
        continue;
      auto F = make_field_q(q);
      auto rng = stream(5, q * 100 + int(f) * 10 + n);
      for (int t = 0; t < 1000; ++t) {
        Mat m = random_group_element(*F, g, rng);
        auto cp = char_poly(*F, m);
        ASSERT_EQ(cp.coeffs, charpoly_by_interpolation(*F, m));
        ASSERT_EQ(cp.coeffs.back(), 1u);
        std::uint32_t c0 = g.N % 2 ? F->neg(1) : 1;
        ASSERT_EQ(cp.coeffs[0], c0);
        bool rs = cp.disc != 0;
        ASSERT_EQ(rs, squarefree_by_gcd(*F, cp.coeffs));
        auto split = distinct_roots_if_split(*F, cp.coeffs);
        if (split) {
          ASSERT_EQ(rs, *split);
        }
      }
    }
}

// Over GF(9) the discriminant test must see eigenvalues in the extension field.
TEST(Classify, ExtensionFieldDiscriminant) {
  auto F = make_field(3, 2);
  auto u = materialize(F, group_params(Family::SL, 2));
  std::size_t nonrs = 0;
  for (const auto& m : u.elems) {
    auto cp = char_poly(*F, m);
    ASSERT_EQ(cp.disc != 0, squarefree_by_gcd(*F, cp.coeffs));
    if (!cp.disc)
      ++nonrs;
  }
  EXPECT_EQ(nonrs, 2u * 81);
}

TEST(Classify, CentralizerAndClass) {
  auto F3 = make_field(3), F5 = make_field(5);
  auto sl2_3 = materialize(F3, group_params(Family::SL, 2));
  EXPECT_EQ(centralizer(sl2_3, identity(2)).size(), 24u);
  auto u = materialize(F5, group_params(Family::SL, 2));
  auto c = centralizer(u, diag({2, 3}));
  EXPECT_EQ(c.size(), 4u);
  for (auto i : c)
    EXPECT_EQ(u.elems[i](0, 1) | u.elems[i](1, 0), 0u);
  EXPECT_EQ(centralizer(u, diag({4, 4})).size(), 120u);
  EXPECT_EQ(conjugacy_class(u, identity(2)).size(), 1u);
  EXPECT_EQ(conjugacy_class(u, diag({2, 3})).size(), 30u);
  EXPECT_EQ(conjugacy_class(u, from_rows(2, {1, 1, 0, 1})).size(), 12u);
}

TEST(Classify, OrbitStabilizerEverywhere) {
  for (std::uint64_t q : {3, 5, 7}) {
    auto F = make_field_q(q);
    auto u = materialize(F, group_params(Family::SL, 2));
    for (const auto& g : u.elems)
      ASSERT_TRUE(orbit_stabilizer(u, g).holds());
  }
}

TEST(Classify, NonRsCountSl2) {
  for (std::uint64_t q : {5, 7}) {
    auto F = make_field_q(q);
    auto u = materialize(F, group_params(Family::SL, 2));
    auto r = count_nonrs_in_group(u);
    EXPECT_EQ(r.count, 2 * q * q);
    EXPECT_TRUE(r.bound_holds);
    EXPECT_EQ(r.disc_gcd_disagreements, 0u);
  }
}

TEST(Classify, Catalogue) {
  auto sl3 = nonrs_subtori(group_params(Family::SL, 3));
  ASSERT_EQ(sl3.size(), 3u);
  EXPECT_EQ(sl3[0].str(), "x1=x2");
  EXPECT_EQ(sl3[1].str(), "x1=x3");
  EXPECT_EQ(sl3[2].str(), "x2=x3");
  auto sp4 = nonrs_subtori(group_params(Family::Sp, 2));
  std::vector<std::string> names;
  for (const auto& r : sp4)
    names.push_back(r.str());
  EXPECT_EQ(names, (std::vector<std::string>{"x1=x2", "x1^2=1", "x1*x2=1", "x2^2=1"}));
  auto so7 = nonrs_subtori(group_params(Family::SOodd, 3));
  int ones = 0;
  for (const auto& r : so7)
    ones += r.kind == RelKind::equals_one;
  EXPECT_EQ(ones, 3);
  for (auto f : {Family::SOeven, Family::SOodd, Family::Sp})
    for (int n = 2; n <= 8; ++n) {
      auto g = group_params_unchecked(f, n);
      EXPECT_LE(int(nonrs_subtori(g).size()), g.r * (g.r + 1) + (f == Family::SOodd ? g.r : 0));
    }
}

TEST(Classify, TorusCounts) {
  auto F5 = make_field(5), F7 = make_field(7);
  auto sl2 = group_params(Family::SL, 2);
  EXPECT_EQ(count_nonrs_in_torus(*F5, enumerate_torus(*F5, sl2)), 2u);
  EXPECT_EQ(count_nonrs_in_torus(*F7, enumerate_torus(*F7, sl2)), 2u);
  // SL_3 over F_5: torus points with a repeated diagonal entry, by direct scan
  auto sl3 = group_params(Family::SL, 3);
  auto t = enumerate_torus(*F5, sl3);
  EXPECT_EQ(t.size(), 16u);
  std::size_t rep = 0;
  for (const auto& m : t)
    if (m(0, 0) == m(1, 1) || m(0, 0) == m(2, 2) || m(1, 1) == m(2, 2))
      ++rep;
  EXPECT_EQ(count_nonrs_in_torus(*F5, t), rep);
  EXPECT_EQ(count_catalogue_union(*F5, sl3, t), rep);
}

// The catalogue is exact for SL and Sp and a cover for SO.
TEST(Classify, CatalogueCoversNonRs) {
  struct Case { Family f; int n; std::uint64_t q; bool exact; };
  for (auto c : std::vector<Case>{{Family::SL, 3, 7, true}, {Family::SL, 4, 7, true}, {Family::Sp, 2, 7, true},
                                  {Family::Sp, 3, 7, true}, {Family::SOodd, 3, 11, false}, {Family::SOeven, 4, 11, false}}) {
    auto F = make_field_q(c.q);
    auto g = group_params(c.f, c.n);
    auto t = enumerate_torus(*F, g);
    for (const auto& m : t)
      ASSERT_TRUE(in_canonical_torus(*F, g, m));
    auto nonrs = count_nonrs_in_torus(*F, t);
    auto uni = count_catalogue_union(*F, g, t);
    if (c.exact)
      EXPECT_EQ(nonrs, uni) << g.name();
    else
      EXPECT_LE(nonrs, uni) << g.name();
  }
}

TEST(Classify, TorusTooLarge) {
  auto F = make_field(101);
  EXPECT_THROW(enumerate_torus(*F, group_params(Family::SL, 5)), Error);
}

TEST(Classify, TorusConjugatesExact) {
  auto F7 = make_field(7), F5 = make_field(5);
  EXPECT_EQ(torus_conjugate_count_exact(materialize(F7, group_params(Family::SL, 2))), 28u);
  EXPECT_EQ(torus_conjugate_count_exact(materialize(F5, group_params(Family::SL, 2))), 15u);
}

TEST(Classify, SoTorusPointCount) {
  for (std::uint64_t q : {7, 11, 13}) {
    auto F = make_field_q(q);
    auto g = group_params(Family::SOodd, 3);
    auto tc = torus_point_count(*F, g);
    EXPECT_EQ(BigInt(enumerate_torus(*F, g).size()), tc.canonical_count);
  }
}
