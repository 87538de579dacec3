#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"

namespace chev {

// GF(p^e). An element is stored as its canonical code sum c_i p^i, where
// c_0 + c_1 x + ... is the reduced residue modulo (p, modulus).
class Field {
public:
  static constexpr std::uint32_t max_q = 1u << 20;

  Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
    for (std::uint32_t i = 0; i < e_; ++i)
      q_ *= p_;
    if (e_ > 1)
      build_tables();
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  // Monic, low degree first, length e+1; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return e_ == 1; }

  bool same(const Field& o) const {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    std::uint32_t r = 0, w = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      std::uint32_t s = a % p_ + b % p_;
      if (s >= p_)
        s -= p_;
      r += s * w;
      w *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (e_ == 1)
      return a == 0 ? 0 : p_ - a;
    std::uint32_t r = 0, w = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      std::uint32_t d = a % p_;
      r += (d == 0 ? 0 : p_ - d) * w;
      w *= p_;
      a /= p_;
    }
    return r;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1)
      return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
    if (a == 0 || b == 0)
      return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1)
      s -= q_ - 1;
    return exp_[s];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0)
      fail(Err::DivisionByZero, "inverse of zero");
    if (e_ == 1)
      return pow(a, p_ - 2);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t r = 1;
    while (k) {
      if (k & 1)
        r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  // Image of an integer under Z -> F_p -> F_q.
  std::uint32_t from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0)
      m += p_;
    return static_cast<std::uint32_t>(m);
  }
  bool is_square(std::uint32_t a) const {
    if (a == 0)
      fail(Err::ZeroInput, "is_square of zero");
    return pow(a, (q_ - 1) / 2) == 1;
  }
  std::vector<std::uint32_t> digits(std::uint32_t a) const {
    std::vector<std::uint32_t> d(e_);
    for (std::uint32_t i = 0; i < e_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  std::uint32_t from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint32_t r = 0, w = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      r += (i < d.size() ? d[i] % p_ : 0) * w;
      w *= p_;
    }
    return r;
  }

  std::string format(std::uint32_t a) const {
    if (e_ == 1)
      return std::to_string(a);
    std::string s;
    auto d = digits(a);
    for (std::uint32_t i = 0; i < e_; ++i) {
      if (i)
        s += ':';
      s += std::to_string(d[i]);
    }
    return s;
  }
  // Accepts "c0:c1:..." (low degree first) or a single, possibly negative, integer.
  std::uint32_t parse(const std::string& text) const {
    std::vector<std::uint32_t> d;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
      try {
        std::size_t pos = 0;
        long long v = std::stoll(part, &pos);
        if (pos != part.size())
          fail(Err::ParseError, "bad field element '" + text + "'");
        d.push_back(from_int(v));
      } catch (const std::logic_error&) {
        fail(Err::ParseError, "bad field element '" + text + "'");
      }
    }
    if (d.empty() || d.size() > e_)
      fail(Err::ParseError, "bad field element '" + text + "'");
    return from_digits(d);
  }

  std::string modulus_string() const {
    std::string s;
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
      if (i)
        s += ':';
      s += std::to_string(modulus_[i]);
    }
    return s;
  }

private:
  std::uint32_t p_, e_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> log_, exp_;

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> c(2 * e_, 0);
    for (std::uint32_t i = 0; i < e_; ++i)
      for (std::uint32_t j = 0; j < e_; ++j)
        c[i + j] = (c[i + j] + std::uint64_t(da[i]) * db[j]) % p_;
    for (std::uint32_t k = 2 * e_ - 1; k >= e_; --k) {
      std::uint64_t t = c[k];
      if (t == 0)
        continue;
      c[k] = 0;
      for (std::uint32_t i = 0; i < e_; ++i)
        c[k - e_ + i] = (c[k - e_ + i] + (p_ - t) * modulus_[i]) % p_;
    }
    std::vector<std::uint32_t> r(e_);
    for (std::uint32_t i = 0; i < e_; ++i)
      r[i] = static_cast<std::uint32_t>(c[i]);
    return from_digits(r);
  }

  void build_tables() {
    std::uint32_t n = q_ - 1;
    std::vector<std::uint32_t> primes;
    std::uint32_t m = n;
    for (std::uint32_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        primes.push_back(d);
        while (m % d == 0)
          m /= d;
      }
    if (m > 1)
      primes.push_back(m);
    auto pow_slow = [&](std::uint32_t a, std::uint32_t k) {
      std::uint32_t r = 1;
      while (k) {
        if (k & 1)
          r = mul_slow(r, a);
        a = mul_slow(a, a);
        k >>= 1;
      }
      return r;
    };
    std::uint32_t g = 0;
    for (std::uint32_t c = 2; c < q_ && g == 0; ++c) {
      bool ok = true;
      for (std::uint32_t l : primes)
        if (pow_slow(c, n / l) == 1) {
          ok = false;
          break;
        }
      if (ok)
        g = c;
    }
    exp_.assign(n, 0);
    log_.assign(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = mul_slow(x, g);
    }
  }
};

using FieldPtr = std::shared_ptr<const Field>;

namespace impl {

// Remainder of a monic polynomial f (low first) by monic g over F_p.
inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> f,
                                           const std::vector<std::uint32_t>& g,
                                           std::uint32_t p) {
  std::size_t dg = g.size() - 1;
  while (f.size() > dg && !f.empty()) {
    std::uint64_t t = f.back();
    std::size_t shift = f.size() - 1 - dg;
    if (t != 0)
      for (std::size_t i = 0; i <= dg; ++i)
        f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - t) * g[i]) % p);
    f.pop_back();
  }
  return f;
}

inline bool is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  std::size_t deg = f.size() - 1;
  // no roots
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = deg + 1; i-- > 0;)
      v = (v * x + f[i]) % p;
    if (v == 0)
      return false;
  }
  // no monic factor of degree 2..deg/2, by exhaustive trial
  for (std::size_t d = 2; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i)
      count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> g(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      auto r = poly_mod(f, g, p);
      bool zero = true;
      for (auto v : r)
        if (v) {
          zero = false;
          break;
        }
      if (zero)
        return false;
    }
  }
  return true;
}

} // namespace impl

// Lexicographic order on (c_0, c_1, ..., c_{e-1}) decides the default modulus.
inline FieldPtr make_field(std::uint32_t p, std::uint32_t e = 1,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  if (!is_prime(p))
    fail(Err::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (e < 1 || e > 4)
    fail(Err::FieldTooLarge, "extension degree must be in 1..4");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i)
    q *= p;
  if (q > Field::max_q)
    fail(Err::FieldTooLarge, "q exceeds 2^20");
  if (e == 1) {
    if (modulus && !modulus->empty() && modulus->size() != 2)
      fail(Err::ReducibleModulus, "prime field takes no modulus of degree != 1");
    return std::make_shared<const Field>(p, 1, std::vector<std::uint32_t>{});
  }
  if (modulus) {
    auto m = *modulus;
    if (m.size() == e)
      m.push_back(1);
    if (m.size() != e + 1 || m.back() % p != 1)
      fail(Err::ReducibleModulus, "modulus must be monic of degree e");
    for (auto& c : m)
      c %= p;
    if (!impl::is_irreducible(m, p))
      fail(Err::ReducibleModulus, "modulus is reducible over GF(p)");
    return std::make_shared<const Field>(p, e, m);
  }
  std::vector<std::uint32_t> c(e, 0);
  for (;;) {
    std::vector<std::uint32_t> m = c;
    m.push_back(1);
    if (impl::is_irreducible(m, p))
      return std::make_shared<const Field>(p, e, m);
    // odometer with c_{e-1} fastest, so c_0 is the most significant key
    std::size_t i = e;
    while (i-- > 0) {
      if (++c[i] < p)
        break;
      c[i] = 0;
    }
  }
}

inline FieldPtr make_field_q(std::uint64_t q) {
  auto [p, e] = prime_power(q);
  if (p == 0)
    fail(Err::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
  return make_field(static_cast<std::uint32_t>(p), e);
}

class FieldElement {
public:
  FieldElement(FieldPtr f, std::uint32_t v) : f_(std::move(f)), v_(v) {}
  const FieldPtr& field() const { return f_; }
  std::uint32_t value() const { return v_; }
  std::string str() const { return f_->format(v_); }
  bool is_zero() const { return v_ == 0; }
  bool operator==(const FieldElement& o) const { return f_->same(*o.f_) && v_ == o.v_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
private:
  FieldPtr f_;
  std::uint32_t v_;
};

enum class ArithOp { add, sub, mul, div };

inline FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  if (!a.field()->same(*b.field()))
    fail(Err::FieldMismatch, "operands live in different fields");
  const Field& F = *a.field();
  switch (op) {
    case ArithOp::add: return {a.field(), F.add(a.value(), b.value())};
    case ArithOp::sub: return {a.field(), F.sub(a.value(), b.value())};
    case ArithOp::mul: return {a.field(), F.mul(a.value(), b.value())};
    case ArithOp::div:
      if (b.is_zero())
        fail(Err::DivisionByZero, "division by zero");
      return {a.field(), F.div(a.value(), b.value())};
  }
  return a;
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, ArithOp::add); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, ArithOp::sub); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, ArithOp::mul); }
inline FieldElement operator/(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, ArithOp::div); }

inline bool is_square(const FieldElement& a) { return a.field()->is_square(a.value()); }

// chi(a) in {-1, 0, 1}
inline int quadratic_character(const Field& F, std::uint32_t a) {
  if (a == 0)
    return 0;
  return F.is_square(a) ? 1 : -1;
}

} // namespace chev
