#pragma once

#include <cstdint>
#include <string>
#include <boost/multiprecision/cpp_int.hpp>

namespace chev {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, std::uint64_t exp) {
  BigInt r = 1;
  while (exp) {
    if (exp & 1)
      r *= base;
    exp >>= 1;
    if (exp)
      base *= base;
  }
  return r;
}

inline Rational rpow(const Rational& base, std::uint64_t exp) {
  return Rational(ipow(boost::multiprecision::numerator(base), exp),
                  ipow(boost::multiprecision::denominator(base), exp));
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i)
    r *= i;
  return r;
}

inline BigInt binom(unsigned n, unsigned k) {
  if (k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Smallest c >= 0 with c^3 >= x, for x >= 0.
inline BigInt icbrt_ceil(const BigInt& x) {
  if (x <= 0)
    return 0;
  BigInt lo = 0, hi = 1;
  while (hi * hi * hi < x)
    hi *= 2;
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) / 2;
    if (mid * mid * mid >= x)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b < a)
    ++q;
  return q;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1)
    return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// Returns (p, e) with q = p^e, or (0, 0) when q is not a prime power.
inline std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2)
    return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0)
    return {q, 1};
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1)
    return {0, 0};
  return {p, e};
}

} // namespace chev
