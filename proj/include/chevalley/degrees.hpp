#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "groups.hpp"
#include "logscaled.hpp"

namespace chev {

enum class PathMethod { enumerate, determinant };

struct PathCountResult {
  int k = 0;
  BigInt exact;
  BigInt product_bound;
};

// Product of binom(2(k-2i), k-2i) over i = 1..floor(k/2).
inline BigInt path_product_bound(int k) {
  BigInt r = 1;
  for (int i = 1; i <= k / 2; ++i)
    r *= binom(2 * (k - 2 * i), k - 2 * i);
  return r;
}

namespace impl {

// Lattice points of the box [-(k-2), 0] x [0, k-2] as bits of a 128-bit mask.
struct PathGrid {
  int k;
  int side;
  explicit PathGrid(int k_) : k(k_), side(k_ - 1) {}
  int bit(int x, int y) const { return (x + side - 1) * side + y; }
};

using Mask = unsigned __int128;

// All monotone (right/up) paths from (sx, 0) to (0, ey), as vertex masks.
inline void paths_between(const PathGrid& g, int x, int y, int ey, Mask acc,
                          Mask forbidden, std::vector<Mask>& out) {
  Mask b = Mask(1) << g.bit(x, y);
  if (forbidden & b)
    return;
  acc |= b;
  if (x == 0 && y == ey) {
    out.push_back(acc);
    return;
  }
  if (x < 0)
    paths_between(g, x + 1, y, ey, acc, forbidden, out);
  if (y < ey)
    paths_between(g, x, y + 1, ey, acc, forbidden, out);
}

struct MaskHash {
  std::size_t operator()(Mask v) const {
    return static_cast<std::size_t>(static_cast<std::uint64_t>(v) * 0x9e3779b97f4a7c15ULL ^
                                    static_cast<std::uint64_t>(v >> 64));
  }
};

struct PathCounter {
  PathGrid g;
  int m;
  std::vector<std::unordered_map<Mask, std::uint64_t, MaskHash>> memo;

  std::vector<Mask> box;  // lattice points path i can visit

  explicit PathCounter(int k) : g(k), m(k / 2), memo(m + 2), box(m + 2, 0) {
    for (int i = 1; i <= m; ++i)
      for (int x = 2 * i - k; x <= 0; ++x)
        for (int y = 0; y <= k - 2 * i; ++y)
          box[i] |= Mask(1) << g.bit(x, y);
  }

  // Tuples for paths i..m given the vertex set of path i-1. Paths i+1..m
  // lie strictly on the lower-right of path i, so only the previous path can
  // collide with the next one.
  std::uint64_t count(int i, Mask prev) {
    if (i > m)
      return 1;
    prev &= box[i];
    auto it = memo[i].find(prev);
    if (it != memo[i].end())
      return it->second;
    std::vector<Mask> choices;
    paths_between(g, 2 * i - g.k, 0, g.k - 2 * i, 0, prev, choices);
    std::uint64_t total = 0;
    for (Mask c : choices)
      total += count(i + 1, c);
    memo[i].emplace(prev, total);
    return total;
  }
};

} // namespace impl

// Brute-force count that checks every path against all earlier ones; only
// for small k, used to validate the memoized enumeration.
inline std::uint64_t path_count_bruteforce(int k) {
  if (k < 2 || k > 8)
    fail(Err::KTooLarge, "brute-force path count supports 2 <= k <= 8");
  impl::PathGrid g(k);
  int m = k / 2;
  std::uint64_t total = 0;
  std::vector<std::vector<impl::Mask>> all(m + 1);
  for (int i = 1; i <= m; ++i)
    impl::paths_between(g, 2 * i - k, 0, k - 2 * i, 0, 0, all[i]);
  auto rec = [&](auto&& self, int i, impl::Mask used) -> void {
    if (i > m) {
      ++total;
      return;
    }
    for (auto p : all[i])
      if (!(p & used))
        self(self, i + 1, used | p);
  };
  rec(rec, 1, 0);
  return total;
}

inline PathCountResult path_count(int k, PathMethod method) {
  PathCountResult res;
  res.k = k;
  if (k < 2)
    fail(Err::KTooLarge, "k must be at least 2");
  res.product_bound = path_product_bound(k);
  if (method == PathMethod::enumerate) {
    if (k > 12)
      fail(Err::KTooLarge, "enumeration supports k <= 12");
    impl::PathCounter pc(k);
    res.exact = pc.count(1, 0);
    return res;
  }
  if (k > 40)
    fail(Err::KTooLarge, "determinant method supports k <= 40");
  int m = k / 2;
  // M[i][j] = #paths (2i-k, 0) -> (0, k-2j) = binom((k-2i)+(k-2j), k-2i)
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      M[i - 1][j - 1] = Rational(binom((k - 2 * i) + (k - 2 * j), k - 2 * i));
  Rational d = 1;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (M[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) {
      d = 0;
      break;
    }
    if (piv != c) {
      std::swap(M[piv], M[c]);
      d = -d;
    }
    d *= M[c][c];
    for (int r = c + 1; r < m; ++r) {
      if (M[r][c] == 0)
        continue;
      Rational f = M[r][c] / M[c][c];
      for (int j = c; j < m; ++j)
        M[r][j] -= f * M[c][j];
    }
  }
  if (boost::multiprecision::denominator(d) != 1)
    fail(Err::TheoremViolation, "path determinant is not an integer");
  res.exact = boost::multiprecision::numerator(d);
  return res;
}

inline BigInt exact_group_degree(const GroupSpec& g) {
  switch (g.family) {
    case Family::SL:
      return g.n;
    case Family::SOeven:
    case Family::SOodd:
      return ipow(2, g.N - 1) * path_count(g.N, PathMethod::determinant).exact;
    case Family::Sp:
      return path_count(g.N + 1, PathMethod::determinant).exact;
  }
  return 0;
}

inline LogScaled table_degree_bound(const GroupSpec& g) { return g.deg_bound; }

struct ClDegreeBound {
  LogScaled factorial_form;  // (N-1)! deg(G)
  LogScaled closed_form;     // 2^{3r^2} r^{2r}
  bool factorial_le_closed = false;
};

inline ClDegreeBound cl_degree_bound(const GroupSpec& g) {
  ClDegreeBound b;
  BigInt f = factorial(g.N - 1) * exact_group_degree(g);
  b.factorial_form = LogScaled::from_int(f);
  BigInt closed = ipow(2, 3ull * g.r * g.r) * ipow(BigInt(g.r), 2ull * g.r);
  b.closed_form = LogScaled::pair(Real(3ull * g.r * g.r) * real_ln(2) +
                                      Real(2 * g.r) * real_ln(g.r),
                                  Rational(closed));
  b.factorial_le_closed = f <= closed;
  return b;
}

} // namespace chev
