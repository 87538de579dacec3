#include <gtest/gtest.h>

#include "chevalley/gf.hpp"
#include "chevalley/rng.hpp"

using namespace chev;

TEST(Gf, PrimeField) {
  auto F = make_field(5);
  EXPECT_EQ(F->q(), 5u);
  EXPECT_EQ(F->mul(2, 3), 1u);
  EXPECT_EQ(F->div(3, 2), 4u);
}

TEST(Gf, NonPrimeCharacteristic) {
  try {
    make_field(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Err::NonPrimeCharacteristic);
  }
}

TEST(Gf, ReducibleModulus) {
  // x^2 + 2 = x^2 - 1 over GF(3) has root 1
  try {
    make_field(3, 2, std::vector<std::uint32_t>{2, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Err::ReducibleModulus);
  }
}

TEST(Gf, Gf9XSquared) {
  auto F = make_field(3, 2, std::vector<std::uint32_t>{1, 0, 1});
  std::uint32_t x = F->parse("0:1");
  EXPECT_EQ(F->format(F->mul(x, x)), "2:0");
  // default modulus is x^2 + 1 as well
  auto G = make_field(3, 2);
  EXPECT_EQ(G->modulus_string(), "1:0:1");
}

TEST(Gf, DefaultModulusIsIrreducible) {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
    auto F = make_field(p, e);
    EXPECT_TRUE(impl::is_irreducible(F->modulus(), p));
  }
}

TEST(Gf, IsSquare) {
  auto F5 = make_field(5), F7 = make_field(7);
  EXPECT_TRUE(F5->is_square(4));
  EXPECT_FALSE(F5->is_square(2));
  EXPECT_FALSE(F7->is_square(6));
  try {
    F5->is_square(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Err::ZeroInput);
  }
}

TEST(Gf, ElementErrors) {
  auto F5 = make_field(5), F7 = make_field(7);
  FieldElement a(F5, 2), z(F5, 0), b(F7, 2);
  EXPECT_THROW(a / z, Error);
  EXPECT_THROW(a + b, Error);
  EXPECT_EQ((a * FieldElement(F5, 3)).value(), 1u);
}

// Field axioms on random triples, exhaustive a^(q-1) = 1 for q <= 121.
TEST(Gf, AxiomsAndMultiplicativeOrder) {
  for (std::uint64_t q : {3, 5, 7, 9, 11, 25, 27, 49, 81, 121}) {
    auto F = make_field_q(q);
    for (std::uint32_t a = 1; a < q; ++a) {
      EXPECT_EQ(F->pow(a, q - 1), 1u);
      EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
    }
    auto rng = stream(17, q);
    for (int t = 0; t < 500; ++t) {
      auto a = static_cast<std::uint32_t>(uniform_index(rng, q));
      auto b = static_cast<std::uint32_t>(uniform_index(rng, q));
      auto c = static_cast<std::uint32_t>(uniform_index(rng, q));
      EXPECT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
      EXPECT_EQ(F->add(F->add(a, b), c), F->add(a, F->add(b, c)));
      EXPECT_EQ(F->mul(a, b), F->mul(b, a));
      EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      EXPECT_EQ(F->pow(F->add(a, b), F->p()), F->add(F->pow(a, F->p()), F->pow(b, F->p())));
    }
  }
}

TEST(Gf, FormatParseRoundTrip) {
  auto F = make_field(5, 3);
  for (std::uint32_t a = 0; a < F->q(); ++a)
    EXPECT_EQ(F->parse(F->format(a)), a);
}
