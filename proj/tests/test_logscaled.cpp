#include <gtest/gtest.h>

#include "chevalley/logscaled.hpp"

using namespace chev;

TEST(LogScaled, ExactAndLogAgree) {
  auto a = ls_ipow(4, 84);
  ASSERT_TRUE(a.exact);
  EXPECT_TRUE(a.agrees());
  auto b = ls_add(a, LogScaled::from_int(2));
  EXPECT_EQ(*b.exact, Rational(ipow(4, 84) + 2));
  EXPECT_TRUE(b.agrees());
  auto c = ls_mul(ls_ipow(2, 45), LogScaled::from_int(5));
  EXPECT_EQ(*c.exact, Rational(ipow(2, 45) * 5));
  EXPECT_TRUE(c.agrees());
}

TEST(LogScaled, Compare) {
  EXPECT_EQ(ls_compare(LogScaled::from_int(3), LogScaled::from_int(4)), Cmp::Less);
  EXPECT_EQ(ls_compare(LogScaled::from_int(4), LogScaled::from_int(4)), Cmp::Equal);
  auto x = LogScaled::from_ln(Real(10));
  auto y = LogScaled::from_ln(Real(10) + Real(1e-9));
  EXPECT_EQ(ls_compare(x, y), Cmp::Indeterminate);
  EXPECT_EQ(ls_compare(x, LogScaled::from_ln(Real(11))), Cmp::Less);
}

TEST(LogScaled, ExactDroppedWhenHuge) {
  auto big = ls_ipow(2, 1u << 20);
  EXPECT_FALSE(big.exact);
  EXPECT_NEAR(big.ln_double(), (1u << 20) * std::log(2.0), 1e-3);
}

TEST(LogScaled, Fmt12) {
  EXPECT_EQ(fmt12(Real(152) * real_ln(4)), "210.71674289");
}

TEST(Tower, Compare) {
  Tower a = Tower::of(5), b = Tower::exp_of(Tower::of(800));
  EXPECT_EQ(tw_compare(a, b), Cmp::Less);
  EXPECT_EQ(b.h, 1);
  Tower c = tw_mul(b, b);
  EXPECT_EQ(tw_compare(c, b), Cmp::Greater);
  Tower d = tw_pow(Tower::of(2), tw_from_int(ipow(2, 4000)));
  EXPECT_GE(d.h, 2);
  EXPECT_EQ(tw_compare(d, c), Cmp::Greater);
}
