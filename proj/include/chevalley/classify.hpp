#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ball.hpp"
#include "degrees.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "groups.hpp"
#include "matrix.hpp"

namespace chev {

// Univariate polynomials over F_q, coefficients low degree first.
using UPoly = std::vector<std::uint32_t>;

inline void upoly_trim(UPoly& p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

inline UPoly upoly_derivative(const Field& F, const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i)
    d.push_back(F.mul(F.from_int(static_cast<long long>(i % F.p())), p[i]));
  upoly_trim(d);
  return d;
}

inline UPoly upoly_mod(const Field& F, UPoly a, const UPoly& b) {
  upoly_trim(a);
  std::uint32_t inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    std::uint32_t c = F.mul(a.back(), inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    upoly_trim(a);
  }
  return a;
}

inline UPoly upoly_gcd(const Field& F, UPoly a, UPoly b) {
  upoly_trim(a);
  upoly_trim(b);
  while (!b.empty()) {
    UPoly r = upoly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline std::uint32_t upoly_eval(const Field& F, const UPoly& p, std::uint32_t x) {
  std::uint32_t v = 0;
  for (std::size_t i = p.size(); i-- > 0;)
    v = F.add(F.mul(v, x), p[i]);
  return v;
}

struct CharPolyData {
  UPoly coeffs;  // length N+1, monic, low degree first
  std::uint32_t disc = 0;
};

// det(t Id - g) by the division-free Berkowitz recursion.
inline UPoly char_poly_coeffs(const Field& F, const Mat& A) {
  int n = A.n;
  // v holds coefficients highest degree first
  std::vector<std::uint32_t> v = {1, F.neg(A(0, 0))};
  for (int r = 1; r < n; ++r) {
    // A_{r+1} = [[M, C], [R, a]] with M the leading r x r block
    std::vector<std::uint32_t> col(r + 2);
    col[0] = 1;
    col[1] = F.neg(A(r, r));
    std::vector<std::uint32_t> w(r);  // M^k C
    for (int i = 0; i < r; ++i)
      w[i] = A(i, r);
    for (int k = 0; k < r; ++k) {
      std::uint32_t s = 0;
      for (int i = 0; i < r; ++i)
        s = F.add(s, F.mul(A(r, i), w[i]));
      col[k + 2] = F.neg(s);
      std::vector<std::uint32_t> nw(r, 0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          nw[i] = F.add(nw[i], F.mul(A(i, j), w[j]));
      w = std::move(nw);
    }
    std::vector<std::uint32_t> nv(r + 2, 0);
    for (int i = 0; i < r + 2; ++i)
      for (int j = 0; j <= std::min(i, r); ++j)
        nv[i] = F.add(nv[i], F.mul(col[i - j], v[j]));
    v = std::move(nv);
  }
  return UPoly(v.rbegin(), v.rend());
}

// Sylvester resultant of f (deg n) and g with formal degree m.
inline std::uint32_t resultant(const Field& F, const UPoly& f, const UPoly& g, int m) {
  int n = static_cast<int>(f.size()) - 1;
  int size = n + m;
  if (size == 0)
    return 1;
  Mat S(size);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k)
      S(i, i + k) = f[n - k];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k)
      S(m + i, i + k) = k <= m && m - k < int(g.size()) ? g[m - k] : 0;
  return det(F, S);
}

// disc(p) = (-1)^{n(n-1)/2} Res(p, p') for monic p.
inline std::uint32_t discriminant(const Field& F, const UPoly& p) {
  int n = static_cast<int>(p.size()) - 1;
  if (n <= 1)
    return 1;
  UPoly d;
  for (int i = 1; i <= n; ++i)
    d.push_back(F.mul(F.from_int(i), p[i]));
  std::uint32_t r = resultant(F, p, d, n - 1);
  if ((n * (n - 1) / 2) % 2)
    r = F.neg(r);
  return r;
}

inline CharPolyData char_poly(const Field& F, const Mat& g) {
  CharPolyData c;
  c.coeffs = char_poly_coeffs(F, g);
  c.disc = discriminant(F, c.coeffs);
  return c;
}

inline bool is_regular_semisimple(const Field& F, const Mat& g) {
  return char_poly(F, g).disc != 0;
}

// gcd(p, p') has degree 0.
inline bool squarefree_by_gcd(const Field& F, const UPoly& p) {
  UPoly d = upoly_derivative(F, p);
  if (d.empty())
    return false;
  return upoly_gcd(F, p, d).size() == 1;
}

// Distinct roots when p splits over F_q; nullopt when it does not split.
inline std::optional<bool> distinct_roots_if_split(const Field& F, const UPoly& p) {
  UPoly rest = p;
  upoly_trim(rest);
  std::vector<std::uint32_t> roots;
  for (std::uint32_t x = 0; x < F.q() && rest.size() > 1; ++x) {
    while (rest.size() > 1 && upoly_eval(F, rest, x) == 0) {
      roots.push_back(x);
      UPoly quo(rest.size() - 1);
      std::uint32_t carry = 0;
      for (std::size_t i = rest.size() - 1; i-- > 0;) {
        carry = F.add(rest[i + 1], F.mul(carry, x));
        quo[i] = carry;
      }
      rest = quo;
    }
  }
  if (rest.size() > 1)
    return std::nullopt;
  std::unordered_set<std::uint32_t> s(roots.begin(), roots.end());
  return s.size() == roots.size();
}

inline std::string format_upoly(const Field& F, const UPoly& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i)
      s += ',';
    s += F.format(p[i]);
  }
  return s;
}

// Exact centralizer by brute force; returns element indices into u.elems.
inline std::vector<std::uint32_t> centralizer(const Universe& u, const Mat& g) {
  const Field& F = *u.F;
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < u.elems.size(); ++i)
    if (mat_mul(F, g, u.elems[i]) == mat_mul(F, u.elems[i], g))
      out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

// Orbit of g under conjugation by the generators, in BFS order.
inline std::vector<Mat> conjugacy_class(const Universe& u, const Mat& g) {
  const Field& F = *u.F;
  std::vector<std::pair<Mat, Mat>> conj;  // (a, a^{-1})
  for (const auto& a : u.gens)
    conj.emplace_back(a, inverse(F, a));
  std::vector<Mat> orbit{g};
  std::unordered_set<std::string> seen{mat_key(F, g)};
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (const auto& [a, ai] : conj) {
      Mat h = mat_mul(F, mat_mul(F, a, orbit[i]), ai);
      if (seen.insert(mat_key(F, h)).second)
        orbit.push_back(std::move(h));
    }
  return orbit;
}

struct OrbitStabilizer {
  std::size_t class_size = 0;
  std::size_t centralizer_size = 0;
  std::size_t group_order = 0;
  bool holds() const { return class_size * centralizer_size == group_order; }
};

inline OrbitStabilizer orbit_stabilizer(const Universe& u, const Mat& g) {
  OrbitStabilizer o;
  o.class_size = conjugacy_class(u, g).size();
  o.centralizer_size = centralizer(u, g).size();
  o.group_order = u.order();
  if (!o.holds())
    fail(Err::TheoremViolation, "orbit-stabilizer fails");
  return o;
}

// ---- non-regular-semisimple subtorus catalogue ----

enum class RelKind { equal, product_one, sum_of_squares_one, equals_one };

inline std::string rel_kind_name(RelKind k) {
  switch (k) {
    case RelKind::equal: return "equal";
    case RelKind::product_one: return "product_one";
    case RelKind::sum_of_squares_one: return "sum_of_squares_one";
    case RelKind::equals_one: return "equals_one";
  }
  return "?";
}

struct SubtorusRelation {
  RelKind kind;
  int i;
  int j;  // equals i for single-index relations
  bool self() const { return i == j; }
  std::string str() const {
    std::string a = "x" + std::to_string(i + 1), b = "x" + std::to_string(j + 1);
    switch (kind) {
      case RelKind::equal: return a + "=" + b;
      case RelKind::product_one: return i == j ? a + "^2=1" : a + "*" + b + "=1";
      case RelKind::sum_of_squares_one: return a + "^2+" + b + "^2=1";
      case RelKind::equals_one: return a + "=1";
    }
    return "?";
  }
};

// Coordinates: diagonal entries for SL; x_1..x_r for Sp; the cosine entry
// of each rotation block for SO. Self-collisions x_i^2 = 1 are included for
// Sp and SO.
inline std::vector<SubtorusRelation> nonrs_subtori(const GroupSpec& g) {
  std::vector<SubtorusRelation> out;
  int k = torus_coord_count(g);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      out.push_back({RelKind::equal, i, j});
  if (g.family == Family::Sp) {
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j)
        out.push_back({RelKind::product_one, i, j});
  }
  if (g.family == Family::SOeven || g.family == Family::SOodd) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        out.push_back({RelKind::sum_of_squares_one, i, j});
    for (int i = 0; i < k; ++i)
      out.push_back({RelKind::product_one, i, i});
  }
  if (g.family == Family::SOodd)
    for (int i = 0; i < k; ++i)
      out.push_back({RelKind::equals_one, i, i});
  return out;
}

inline bool relation_holds(const Field& F, const SubtorusRelation& rel,
                           const std::vector<std::uint32_t>& x) {
  std::uint32_t a = x[rel.i], b = x[rel.j];
  switch (rel.kind) {
    case RelKind::equal: return a == b;
    case RelKind::product_one: return F.mul(a, b) == 1;
    case RelKind::sum_of_squares_one: return F.add(F.mul(a, a), F.mul(b, b)) == 1;
    case RelKind::equals_one: return a == 1;
  }
  return false;
}

// Elements of the canonical maximal torus T(F_q).
inline std::vector<Mat> enumerate_torus(const Field& F, const GroupSpec& g,
                                        std::uint64_t cap = 10'000'000) {
  std::uint32_t q = F.q();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> rot;  // (c, s), c^2 + s^2 = 1
  if (g.family == Family::SOeven || g.family == Family::SOodd)
    for (std::uint32_t c = 0; c < q; ++c)
      for (std::uint32_t s = 0; s < q; ++s)
        if (F.add(F.mul(c, c), F.mul(s, s)) == 1)
          rot.emplace_back(c, s);
  std::uint64_t per = (g.family == Family::SL || g.family == Family::Sp) ? q - 1 : rot.size();
  std::uint64_t total = 1;
  for (int i = 0; i < g.r; ++i) {
    total *= per;
    if (total > cap)
      fail(Err::TorusTooLarge, "torus has more than " + std::to_string(cap) + " points");
  }
  std::vector<Mat> out;
  std::vector<std::uint64_t> idx(g.r, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    Mat m(g.N);
    switch (g.family) {
      case Family::SL: {
        std::uint32_t prod = 1;
        for (int i = 0; i < g.r; ++i) {
          m(i, i) = static_cast<std::uint32_t>(idx[i] + 1);
          prod = F.mul(prod, m(i, i));
        }
        m(g.r, g.r) = F.inv(prod);
        break;
      }
      case Family::Sp:
        for (int i = 0; i < g.r; ++i) {
          m(i, i) = static_cast<std::uint32_t>(idx[i] + 1);
          m(g.r + i, g.r + i) = F.inv(m(i, i));
        }
        break;
      case Family::SOeven:
      case Family::SOodd:
        for (int i = 0; i < g.r; ++i) {
          auto [cc, ss] = rot[idx[i]];
          m(2 * i, 2 * i) = cc;
          m(2 * i + 1, 2 * i + 1) = cc;
          m(2 * i, 2 * i + 1) = ss;
          m(2 * i + 1, 2 * i) = F.neg(ss);
        }
        if (g.family == Family::SOodd)
          m(g.N - 1, g.N - 1) = 1;
        break;
    }
    out.push_back(std::move(m));
    for (int i = 0; i < g.r; ++i) {
      if (++idx[i] < per)
        break;
      idx[i] = 0;
    }
  }
  return out;
}

inline std::vector<std::uint32_t> torus_coords(const GroupSpec& g, const Mat& m) {
  std::vector<std::uint32_t> x;
  switch (g.family) {
    case Family::SL:
      for (int i = 0; i < g.N; ++i)
        x.push_back(m(i, i));
      break;
    case Family::Sp:
      for (int i = 0; i < g.r; ++i)
        x.push_back(m(i, i));
      break;
    case Family::SOeven:
    case Family::SOodd:
      for (int i = 0; i < g.r; ++i)
        x.push_back(m(2 * i, 2 * i));
      break;
  }
  return x;
}

// Membership in the canonical maximal torus.
inline bool in_canonical_torus(const Field& F, const GroupSpec& g, const Mat& m) {
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      if (i == j)
        continue;
      bool block = (g.family == Family::SOeven || g.family == Family::SOodd) && i / 2 == j / 2 &&
                   i < 2 * g.r && j < 2 * g.r;
      if (!block && m(i, j))
        return false;
    }
  if (g.family == Family::SOeven || g.family == Family::SOodd)
    for (int i = 0; i < g.r; ++i)
      if (m(2 * i, 2 * i) != m(2 * i + 1, 2 * i + 1) ||
          m(2 * i, 2 * i + 1) != F.neg(m(2 * i + 1, 2 * i)))
        return false;
  return is_member(F, g, m);
}

// Character prod x_i^{eta_i} (SL and Sp coordinates only).
inline std::uint32_t torus_character(const Field& F, const GroupSpec& g, const Mat& m,
                                     const std::vector<long long>& eta) {
  if (g.family != Family::SL && g.family != Family::Sp)
    fail(Err::FamilyNotSupported, "torus characters are evaluated for SL and Sp only");
  auto x = torus_coords(g, m);
  std::uint32_t v = 1;
  for (std::size_t i = 0; i < eta.size() && i < x.size(); ++i) {
    long long e = eta[i] % static_cast<long long>(F.q() - 1);
    if (e < 0)
      e += F.q() - 1;
    v = F.mul(v, F.pow(x[i], static_cast<std::uint64_t>(e)));
  }
  return v;
}

inline std::size_t count_nonrs_in_torus(const Field& F, const std::vector<Mat>& torus) {
  std::size_t c = 0;
  for (const auto& t : torus)
    if (!is_regular_semisimple(F, t))
      ++c;
  return c;
}

// Torus points satisfying at least one catalogue relation.
inline std::size_t count_catalogue_union(const Field& F, const GroupSpec& g,
                                         const std::vector<Mat>& torus) {
  auto rels = nonrs_subtori(g);
  std::size_t c = 0;
  for (const auto& t : torus) {
    auto x = torus_coords(g, t);
    for (const auto& rel : rels)
      if (relation_holds(F, rel, x)) {
        ++c;
        break;
      }
  }
  return c;
}

struct NonrsGroupCount {
  std::size_t count = 0;
  std::size_t order = 0;
  LogScaled nonrs_bound;  // N(N-1) deg(G) q^{dim-1}
  bool bound_holds = false;
  std::size_t disc_gcd_disagreements = 0;
};

inline NonrsGroupCount count_nonrs_in_group(const Universe& u) {
  const Field& F = *u.F;
  NonrsGroupCount r;
  r.order = u.order();
  for (const auto& g : u.elems) {
    auto cp = char_poly(F, g);
    bool rs = cp.disc != 0;
    if (rs != squarefree_by_gcd(F, cp.coeffs))
      ++r.disc_gcd_disagreements;
    if (!rs)
      ++r.count;
  }
  const GroupSpec& s = u.spec;
  BigInt b = BigInt(s.N) * (s.N - 1) * exact_group_degree(s) * ipow(BigInt(F.q()), s.dim - 1);
  r.nonrs_bound = LogScaled::from_int(b);
  r.bound_holds = BigInt(r.count) <= b;
  return r;
}

// |G| / |N(T)| with N(T) the set normaliser of T(F_q) in the materialized group.
inline std::size_t torus_conjugate_count_exact(const Universe& u) {
  const Field& F = *u.F;
  auto torus = enumerate_torus(F, u.spec);
  std::unordered_set<std::string> tset;
  for (const auto& t : torus)
    tset.insert(mat_key(F, t));
  std::size_t norm = 0;
  for (const auto& g : u.elems) {
    Mat gi = inverse(F, g);
    bool ok = true;
    for (const auto& t : torus)
      if (!tset.count(mat_key(F, mat_mul(F, mat_mul(F, g, t), gi)))) {
        ok = false;
        break;
      }
    if (ok)
      ++norm;
  }
  return u.order() / norm;
}

struct TorusPointCount {
  BigInt split_count;     // (q-1)^r
  BigInt canonical_count;  // actual |T(F_q)| of the canonical torus
};

// For SO a rotation block has q - chi(-1) points over F_q.
inline TorusPointCount torus_point_count(const Field& F, const GroupSpec& g) {
  TorusPointCount t;
  t.split_count = ipow(BigInt(F.q() - 1), g.r);
  if (g.family == Family::SOeven || g.family == Family::SOodd) {
    long long per = static_cast<long long>(F.q()) - quadratic_character(F, F.neg(1));
    t.canonical_count = ipow(BigInt(per), g.r);
  } else {
    t.canonical_count = t.split_count;
  }
  return t;
}

} // namespace chev
