#pragma once

#include <cmath>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bigint.hpp"

namespace chev {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real real_ln(const Real& x) { return boost::multiprecision::log(x); }
inline Real real_ln(const BigInt& x) { return boost::multiprecision::log(Real(x)); }
inline Real real_ln(const Rational& x) {
  return real_ln(boost::multiprecision::numerator(x)) -
         real_ln(boost::multiprecision::denominator(x));
}
inline Real real_ln(long long v) { return boost::multiprecision::log(Real(v)); }

// Decimal string with 12 significant digits.
inline std::string fmt12(const Real& x) {
  if (boost::multiprecision::isinf(x))
    return x < 0 ? "-inf" : "inf";
  return x.str(12);
}

inline std::string fmt12(double x) { return fmt12(Real(x)); }

enum class Cmp { Less, Equal, Greater, Indeterminate };

inline const char* cmp_name(Cmp c) {
  switch (c) {
    case Cmp::Less: return "less";
    case Cmp::Equal: return "equal";
    case Cmp::Greater: return "greater";
    case Cmp::Indeterminate: return "indeterminate";
  }
  return "?";
}

// A nonnegative quantity kept as its natural logarithm, with the exact
// rational value alongside while it stays under exact_bits_cap bits.
struct LogScaled {
  static constexpr std::size_t exact_bits_cap = 1u << 17;
  static constexpr double agree_slack = 1e-9;
  static constexpr double decide_slack = 1e-6;

  Real ln = 0;
  std::optional<Rational> exact;

  static LogScaled from_ln(const Real& l) {
    LogScaled s;
    s.ln = l;
    return s;
  }
  static LogScaled from_exact(const Rational& v) {
    LogScaled s;
    s.ln = v == 0 ? -std::numeric_limits<Real>::infinity() : real_ln(v);
    s.exact = v;
    return s;
  }
  static LogScaled from_int(const BigInt& v) { return from_exact(Rational(v)); }
  // Independent routes: ln supplied by a closed form, exact by integer arithmetic.
  static LogScaled pair(const Real& l, std::optional<Rational> v) {
    LogScaled s;
    s.ln = l;
    s.exact = std::move(v);
    return s;
  }

  double ln_double() const { return static_cast<double>(ln); }
  std::string ln_str() const { return fmt12(ln); }
  std::string exact_str() const { return exact ? to_string(*exact) : std::string(); }

  // |ln(exact) - ln| <= 1e-9 max(1, ln); vacuous without an exact value.
  bool agrees() const {
    if (!exact)
      return true;
    if (*exact == 0)
      return boost::multiprecision::isinf(ln) && ln < 0;
    Real d = boost::multiprecision::abs(real_ln(*exact) - ln);
    Real scale = ln > 1 ? ln : Real(1);
    return d <= Real(agree_slack) * scale;
  }
};

inline std::size_t bit_estimate(const Real& ln) {
  if (ln <= 0)
    return 1;
  Real b = ln / boost::multiprecision::log(Real(2));
  if (b > Real(1e15))
    return static_cast<std::size_t>(1e15);
  return static_cast<std::size_t>(b) + 1;
}

inline std::optional<Rational> cap_exact(const Real& ln, std::optional<Rational> v) {
  if (!v || bit_estimate(ln) > LogScaled::exact_bits_cap)
    return std::nullopt;
  return v;
}

inline LogScaled ls_mul(const LogScaled& a, const LogScaled& b) {
  Real l = a.ln + b.ln;
  std::optional<Rational> v;
  if (a.exact && b.exact && bit_estimate(l) <= LogScaled::exact_bits_cap)
    v = *a.exact * *b.exact;
  return LogScaled::pair(l, v);
}

inline LogScaled ls_div(const LogScaled& a, const LogScaled& b) {
  Real l = a.ln - b.ln;
  std::optional<Rational> v;
  if (a.exact && b.exact && *b.exact != 0)
    v = *a.exact / *b.exact;
  return LogScaled::pair(l, cap_exact(l, v));
}

inline LogScaled ls_add(const LogScaled& a, const LogScaled& b) {
  Real hi = a.ln > b.ln ? a.ln : b.ln;
  Real lo = a.ln > b.ln ? b.ln : a.ln;
  Real l = hi + boost::multiprecision::log1p(boost::multiprecision::exp(lo - hi));
  std::optional<Rational> v;
  if (a.exact && b.exact)
    v = *a.exact + *b.exact;
  return LogScaled::pair(l, cap_exact(l, v));
}

inline LogScaled ls_pow(const LogScaled& a, std::uint64_t k) {
  Real l = a.ln * Real(k);
  std::optional<Rational> v;
  if (a.exact && bit_estimate(l) <= LogScaled::exact_bits_cap)
    v = rpow(*a.exact, k);
  return LogScaled::pair(l, v);
}

// base^k with both routes evaluated independently.
inline LogScaled ls_ipow(long long base, std::uint64_t k) {
  Real l = Real(k) * real_ln(base);
  std::optional<Rational> v;
  if (bit_estimate(l) <= LogScaled::exact_bits_cap)
    v = Rational(ipow(BigInt(base), k));
  return LogScaled::pair(l, v);
}

inline Cmp ls_compare(const LogScaled& a, const LogScaled& b) {
  if (a.exact && b.exact) {
    if (*a.exact < *b.exact)
      return Cmp::Less;
    if (*a.exact > *b.exact)
      return Cmp::Greater;
    return Cmp::Equal;
  }
  // log-only values are positive; exact zero sits below all of them
  if (a.exact && *a.exact <= 0)
    return Cmp::Less;
  if (b.exact && *b.exact <= 0)
    return Cmp::Greater;
  Real d = a.ln - b.ln;
  Real scale = 1;
  if (boost::multiprecision::abs(a.ln) > scale)
    scale = boost::multiprecision::abs(a.ln);
  if (boost::multiprecision::abs(b.ln) > scale)
    scale = boost::multiprecision::abs(b.ln);
  if (boost::multiprecision::abs(d) <= Real(LogScaled::decide_slack) * scale)
    return Cmp::Indeterminate;
  return d < 0 ? Cmp::Less : Cmp::Greater;
}

// Positive value exp^h(x) (exp applied h times to x). Normalized so that a
// larger height always means a larger value.
struct Tower {
  int h = 0;
  double x = 0;

  static constexpr double lift = 709.0;
  static constexpr double slack = 1e-9;

  static Tower of(double v) { return Tower{0, v}.norm(); }
  static Tower exp_of(const Tower& t) { return Tower{t.h + 1, t.x}.norm(); }

  Tower norm() const {
    Tower t = *this;
    while (t.h > 0 && t.x < lift) {
      t.x = std::exp(t.x);
      --t.h;
    }
    return t;
  }
  Tower ln() const {
    Tower t = norm();
    if (t.h > 0)
      return Tower{t.h - 1, t.x}.norm();
    return Tower{0, std::log(t.x)};
  }
  bool is_zero() const { return h == 0 && x == 0; }
  std::string str() const {
    return "(" + std::to_string(h) + "," + fmt12(x) + ")";
  }
};

inline Cmp tw_compare(Tower a, Tower b) {
  a = a.norm();
  b = b.norm();
  if (a.h != b.h)
    return a.h < b.h ? Cmp::Less : Cmp::Greater;
  double scale = std::max({1.0, std::abs(a.x), std::abs(b.x)});
  if (std::abs(a.x - b.x) <= Tower::slack * scale)
    return a.x == b.x ? Cmp::Equal : Cmp::Indeterminate;
  return a.x < b.x ? Cmp::Less : Cmp::Greater;
}

inline Tower tw_max(const Tower& a, const Tower& b) {
  return tw_compare(a, b) == Cmp::Less ? b : a;
}

// a + b; height-0 operands may be negative.
inline Tower tw_add(Tower a, Tower b) {
  a = a.norm();
  b = b.norm();
  if (a.h == 0 && b.h == 0) {
    double s = a.x + b.x;
    if (std::isfinite(s) && std::abs(s) < 1e300)
      return Tower{0, s};
    double hi = std::max(a.x, b.x), lo = std::min(a.x, b.x);
    return Tower::exp_of(Tower{0, std::log(hi) + std::log1p(lo / hi)});
  }
  Tower hi = tw_max(a, b);
  Tower lo = tw_compare(a, b) == Cmp::Less ? a : b;
  if (lo.h == 0 && lo.x <= 0)
    return hi;
  Tower lh = hi.ln(), ll = lo.ln();
  if (lh.h == 0 && ll.h == 0)
    return Tower::exp_of(Tower{0, lh.x + std::log1p(std::exp(ll.x - lh.x))});
  return hi;
}

// a * b for a, b >= 0.
inline Tower tw_mul(Tower a, Tower b) {
  a = a.norm();
  b = b.norm();
  if (a.is_zero() || b.is_zero())
    return Tower{0, 0};
  if (a.h == 0 && b.h == 0) {
    double s = a.x * b.x;
    if (std::isfinite(s) && s < 1e300)
      return Tower{0, s};
  }
  return Tower::exp_of(tw_add(a.ln(), b.ln()));
}

// a^y for a >= 1, y >= 0.
inline Tower tw_pow(Tower a, Tower y) {
  Tower la = a.ln();
  if (la.h == 0 && la.x <= 0)
    return Tower{0, 1};
  return Tower::exp_of(tw_mul(y, la));
}

inline Tower tw_from_ls(const LogScaled& v) { return Tower::exp_of(Tower{0, v.ln_double()}); }

inline Tower tw_from_int(const BigInt& v) {
  if (v <= 0)
    return Tower{0, 0};
  return Tower::exp_of(Tower{0, static_cast<double>(real_ln(v))});
}

} // namespace chev
