#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "logscaled.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace chev {

enum class Family { SL, SOeven, SOodd, Sp };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::SL: return "SL";
    case Family::SOeven: return "SOeven";
    case Family::SOodd: return "SOodd";
    case Family::Sp: return "Sp";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "SL")
    return Family::SL;
  if (s == "SOeven")
    return Family::SOeven;
  if (s == "SOodd")
    return Family::SOodd;
  if (s == "Sp")
    return Family::Sp;
  fail(Err::UsageError, "unknown family '" + s + "' (expected SL, SOeven, SOodd, Sp)");
}

// One row of the classical-group table. n is the family parameter:
// SL_n, SO_{2n}, SO_{2n+1}, Sp_{2n}.
struct GroupSpec {
  Family family = Family::SL;
  int n = 0;
  int r = 0;
  int N = 0;
  int dim = 0;
  int ell = 0;
  LogScaled deg_bound;

  bool operator==(const GroupSpec& o) const { return family == o.family && n == o.n; }
  std::string name() const {
    switch (family) {
      case Family::SL: return "SL_" + std::to_string(N);
      case Family::SOeven:
      case Family::SOodd: return "SO_" + std::to_string(N);
      case Family::Sp: return "Sp_" + std::to_string(N);
    }
    return "?";
  }
};

// Table values without the admissibility gate; small toys (SO_3, so_2, sp_2)
// are used by enumeration oracles.
inline GroupSpec group_params_unchecked(Family family, int n) {
  if (n < 1 || (family == Family::SL && n < 2))
    fail(Err::InadmissibleFamilyParameter, "parameter too small");
  GroupSpec g;
  g.family = family;
  g.n = n;
  switch (family) {
    case Family::SL:
      g.r = n - 1;
      g.N = n;
      g.dim = g.r * g.r + 2 * g.r;
      g.ell = g.r + 2;
      g.deg_bound = LogScaled::from_int(n);
      break;
    case Family::SOeven:
      g.r = n;
      g.N = 2 * n;
      g.dim = 2 * n * n - n;
      g.ell = 2 * n - 1;
      g.deg_bound = ls_ipow(2, 2ull * n * n - 1);
      break;
    case Family::SOodd:
      g.r = n;
      g.N = 2 * n + 1;
      g.dim = 2 * n * n + n;
      g.ell = 2 * n + 1;
      g.deg_bound = ls_ipow(2, 2ull * n * n + 2ull * n);
      break;
    case Family::Sp:
      g.r = n;
      g.N = 2 * n;
      g.dim = 2 * n * n + n;
      g.ell = 2 * n + 1;
      g.deg_bound = ls_ipow(2, 2ull * n * n);
      break;
  }
  return g;
}

inline GroupSpec group_params(Family family, int n) {
  bool ok = true;
  switch (family) {
    case Family::SL: ok = n >= 2; break;
    case Family::SOeven: ok = n >= 4; break;
    case Family::SOodd: ok = n >= 3; break;
    case Family::Sp: ok = n >= 2; break;
  }
  if (!ok)
    fail(Err::InadmissibleFamilyParameter,
         family_name(family) + " with n=" + std::to_string(n) + " is not admissible");
  return group_params_unchecked(family, n);
}

// Family from a name and matrix size, e.g. ("SO", 7) -> SOodd n=3.
inline GroupSpec group_from_size(const std::string& fam, int N) {
  if (fam == "SL")
    return group_params(Family::SL, N);
  if (fam == "Sp") {
    if (N % 2)
      fail(Err::InadmissibleFamilyParameter, "Sp needs even N");
    return group_params(Family::Sp, N / 2);
  }
  if (fam == "SO")
    return N % 2 ? group_params(Family::SOodd, N / 2) : group_params(Family::SOeven, N / 2);
  return group_params(parse_family(fam), N);
}

inline Mat omega(const Field& F, int N) {
  int n = N / 2;
  Mat w(N);
  for (int i = 0; i < n; ++i) {
    w(i, n + i) = 1;
    w(n + i, i) = F.neg(1);
  }
  return w;
}

inline bool is_member(const Field& F, const GroupSpec& g, const Mat& m) {
  if (m.n != g.N)
    fail(Err::ShapeMismatch, "expected " + std::to_string(g.N) + "x" + std::to_string(g.N));
  switch (g.family) {
    case Family::SL:
      return det(F, m) == 1;
    case Family::SOeven:
    case Family::SOodd:
      return mat_mul(F, transpose(m), m) == identity(g.N) && det(F, m) == 1;
    case Family::Sp: {
      Mat w = omega(F, g.N);
      return mat_mul(F, mat_mul(F, transpose(m), w), m) == w;
    }
  }
  return false;
}

inline bool is_lie_member(const Field& F, const GroupSpec& g, const Mat& x) {
  if (x.n != g.N)
    fail(Err::ShapeMismatch, "expected " + std::to_string(g.N) + "x" + std::to_string(g.N));
  switch (g.family) {
    case Family::SL:
      return trace(F, x) == 0;
    case Family::SOeven:
    case Family::SOodd:
      return transpose(x) == mat_scale(F, F.neg(1), x);
    case Family::Sp: {
      // x^T W + W x = 0 is equivalent to the block form (A B; C -A^T), B, C symmetric
      Mat w = omega(F, g.N);
      return is_zero(mat_add(F, mat_mul(F, transpose(x), w), mat_mul(F, w, x)));
    }
  }
  return false;
}

// A basis of the Lie algebra as N x N matrices.
inline std::vector<Mat> lie_basis(const Field& F, const GroupSpec& g) {
  int N = g.N;
  std::uint32_t m1 = F.neg(1);
  std::vector<Mat> b;
  auto unit = [&](int i, int j, std::uint32_t v, Mat& m) { m(i, j) = F.add(m(i, j), v); };
  switch (g.family) {
    case Family::SL:
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (i != j) {
            Mat m(N);
            m(i, j) = 1;
            b.push_back(m);
          }
      for (int i = 0; i + 1 < N; ++i) {
        Mat m(N);
        m(i, i) = 1;
        m(N - 1, N - 1) = m1;
        b.push_back(m);
      }
      break;
    case Family::SOeven:
    case Family::SOodd:
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          Mat m(N);
          m(i, j) = 1;
          m(j, i) = m1;
          b.push_back(m);
        }
      break;
    case Family::Sp: {
      int n = N / 2;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Mat m(N);
          m(i, j) = 1;
          m(n + j, n + i) = m1;
          b.push_back(m);
        }
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Mat u(N), l(N);
          unit(i, n + j, 1, u);
          if (i != j)
            unit(j, n + i, 1, u);
          unit(n + i, j, 1, l);
          if (i != j)
            unit(n + j, i, 1, l);
          b.push_back(u);
          b.push_back(l);
        }
      break;
    }
  }
  return b;
}

inline std::uint64_t checked_char(std::uint64_t q) {
  auto [p, e] = prime_power(q);
  if (p == 0)
    fail(Err::BadCharacteristic, std::to_string(q) + " is not a prime power");
  if (p == 2)
    fail(Err::BadCharacteristic, "characteristic 2 is not supported");
  return p;
}

// The displayed product formulas; the SL division is done last and must be exact.
inline BigInt group_order(const GroupSpec& g, std::uint64_t q) {
  checked_char(q);
  BigInt Q = q;
  int r = g.r;
  switch (g.family) {
    case Family::SL: {
      BigInt prod = 1;
      BigInt top = ipow(Q, r + 1);
      for (int i = 0; i <= r; ++i)
        prod *= top - ipow(Q, i);
      BigInt res = prod / (Q - 1);
      if (res * (Q - 1) != prod)
        fail(Err::TheoremViolation, "SL order division not exact");
      return res;
    }
    case Family::SOeven: {
      BigInt res = ipow(Q, std::uint64_t(r) * (r - 1)) * (ipow(Q, r) - 1);
      for (int i = 1; i <= r - 1; ++i)
        res *= ipow(Q, 2 * i) - 1;
      return res;
    }
    case Family::SOodd:
    case Family::Sp: {
      BigInt res = ipow(Q, std::uint64_t(r) * r);
      for (int i = 1; i <= r; ++i)
        res *= ipow(Q, 2 * i) - 1;
      return res;
    }
  }
  return 0;
}

// Order of SO for the form x^T x = Id: an even-dimensional sum of squares is
// of minus type exactly when (-1)^r is a non-square, which flips (q^r - 1).
inline BigInt so_identity_form_order(const GroupSpec& g, std::uint64_t q) {
  if (g.family != Family::SOeven)
    return group_order(g, q);
  checked_char(q);
  bool minus_one_square = q % 4 == 1;
  bool plus_type = (g.r % 2 == 0) || minus_one_square;
  if (plus_type)
    return group_order(g, q);
  BigInt Q = q;
  BigInt res = ipow(Q, std::uint64_t(g.r) * (g.r - 1)) * (ipow(Q, g.r) + 1);
  for (int i = 1; i <= g.r - 1; ++i)
    res *= ipow(Q, 2 * i) - 1;
  return res;
}

inline BigInt lie_algebra_count(const GroupSpec& g, std::uint64_t q) {
  checked_char(q);
  return ipow(BigInt(q), g.dim);
}

// Exhaustive count of N x N matrices meeting the Lie conditions (tiny cases only).
inline std::uint64_t lie_algebra_enumerate(const Field& F, const GroupSpec& g,
                                           std::uint64_t cap = 50'000'000) {
  std::uint64_t total = 1;
  for (int i = 0; i < g.N * g.N; ++i) {
    total *= F.q();
    if (total > cap)
      fail(Err::AmbientTooLarge, "enumeration exceeds cap");
  }
  Mat x(g.N);
  std::uint64_t count = 0;
  for (std::uint64_t c = 0; c < total; ++c) {
    if (is_lie_member(F, g, x))
      ++count;
    for (auto& v : x.a) {
      if (++v < F.q())
        break;
      v = 0;
    }
  }
  return count;
}

enum class CayleyDir { to_group, to_algebra };

// lambda(x) = (Id - x)(Id + x)^{-1}; an involution wherever defined.
inline Mat cayley_map(const Field& F, Family fam, const Mat& x,
                      CayleyDir dir = CayleyDir::to_group) {
  (void)dir;
  if (fam == Family::SL)
    fail(Err::FamilyNotSupported, "the Cayley map is used only for SO and Sp");
  Mat id = identity(x.n);
  Mat inv;
  if (!try_inverse(F, mat_add(F, id, x), inv))
    fail(Err::SingularShift, "det(Id + x) = 0");
  return mat_mul(F, mat_sub(F, id, x), inv);
}

struct TorusSpec {
  GroupSpec spec;
  std::vector<long long> eta;  // empty for the maximal torus
  bool maximal() const { return eta.empty(); }
};

// Number of torus coordinates a_1..a_k: n diagonal entries for SL, r otherwise.
inline int torus_coord_count(const GroupSpec& g) { return g.family == Family::SL ? g.N : g.r; }

// Lie element of the canonical torus with coordinates a.
inline Mat torus_lie_element(const Field& F, const GroupSpec& g,
                             const std::vector<std::uint32_t>& a) {
  Mat m(g.N);
  switch (g.family) {
    case Family::SL:
      for (int i = 0; i < g.N; ++i)
        m(i, i) = a[i];
      break;
    case Family::SOeven:
    case Family::SOodd:
      for (int i = 0; i < g.r; ++i) {
        m(2 * i, 2 * i + 1) = a[i];
        m(2 * i + 1, 2 * i) = F.neg(a[i]);
      }
      break;
    case Family::Sp:
      for (int i = 0; i < g.r; ++i) {
        m(i, i) = a[i];
        m(g.r + i, g.r + i) = F.neg(a[i]);
      }
      break;
  }
  return m;
}

// Basis (in torus coordinates) of the canonical torus Lie algebra.
inline std::vector<std::vector<std::uint32_t>> torus_coordinate_basis(const Field& F,
                                                                      const TorusSpec& t) {
  const GroupSpec& g = t.spec;
  int k = torus_coord_count(g);
  std::vector<std::vector<std::uint32_t>> rows;
  if (g.family == Family::SL)
    rows.push_back(std::vector<std::uint32_t>(k, 1));
  if (!t.maximal()) {
    if (int(t.eta.size()) != k)
      fail(Err::BadEta, "eta needs " + std::to_string(k) + " entries");
    std::vector<std::uint32_t> row(k);
    for (int i = 0; i < k; ++i)
      row[i] = F.from_int(t.eta[i]);
    if (row[k - 1] == 0)
      fail(Err::BadEta, "eta_n must be nonzero in the field");
    rows.push_back(row);
  }
  auto basis = nullspace(F, rows, k);
  int want = t.maximal() ? g.r : g.r - 1;
  if (int(basis.size()) != want)
    fail(Err::BadEta, "the cut does not lower the torus dimension by one");
  return basis;
}

inline std::vector<Mat> canonical_torus_lie_basis(const Field& F, const TorusSpec& t) {
  std::vector<Mat> out;
  for (const auto& a : torus_coordinate_basis(F, t))
    out.push_back(torus_lie_element(F, t.spec, a));
  return out;
}

inline BigInt weyl_order(const GroupSpec& g) {
  switch (g.family) {
    case Family::SL: return factorial(g.r + 1);
    case Family::SOeven: return ipow(2, g.r - 1) * factorial(g.r);
    case Family::SOodd:
    case Family::Sp: return ipow(2, g.r) * factorial(g.r);
  }
  return 0;
}

inline BigInt torus_conjugate_count_bound(const GroupSpec& g, std::uint64_t q) {
  checked_char(q);
  BigInt num = ipow(BigInt(q - 1), g.dim - g.r);
  BigInt den = factorial(g.r) * ipow(2, g.r);
  return ceil_div(num, den);
}

enum class Theorem { main, torus, escape_point };

inline std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::main: return "main";
    case Theorem::torus: return "torus";
    case Theorem::escape_point: return "escape_point";
  }
  return "?";
}

struct HypothesisCheck {
  std::string name;
  bool holds = false;
  std::string value;
  std::string threshold;
};

struct HypothesisReport {
  Theorem theorem = Theorem::main;
  std::vector<HypothesisCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.holds)
        return false;
    return true;
  }
};

inline HypothesisReport hypotheses_ok(const GroupSpec& g, std::uint64_t q, Theorem th) {
  HypothesisReport rep;
  rep.theorem = th;
  auto [p, e] = prime_power(q);
  (void)e;
  auto add = [&](std::string name, bool holds, std::string value, std::string thr) {
    rep.checks.push_back({std::move(name), holds, std::move(value), std::move(thr)});
  };
  add("char_odd", p > 2, std::to_string(p), "3");
  if (th == Theorem::main || th == Theorem::torus) {
    add("char_gt_N", p > std::uint64_t(g.N), std::to_string(p), std::to_string(g.N + 1));
    BigInt thr = ipow(BigInt(2 * g.r), 6ull * g.r);  // e^{6r log 2r}
    add("q_ge_e^(6r ln 2r)", BigInt(q) >= thr, std::to_string(q), thr.str());
  }
  if (th == Theorem::torus)
    add("rank_ge_2", g.r >= 2, std::to_string(g.r), "2");
  if (th == Theorem::escape_point) {
    BigInt thr = BigInt(20) * g.r * g.r * g.r;
    add("q_ge_20r^3", BigInt(q) >= thr, std::to_string(q), thr.str());
  }
  return rep;
}

// Root-subgroup generators with parameters running over an F_p-basis of F_q.
inline std::vector<Mat> standard_generators(const Field& F, const GroupSpec& g) {
  std::vector<std::uint32_t> basis;
  for (std::uint32_t i = 0, w = 1; i < F.e(); ++i, w *= F.p())
    basis.push_back(w);
  int N = g.N;
  std::vector<Mat> out;
  switch (g.family) {
    case Family::SL:
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (i != j)
            for (auto t : basis) {
              Mat m = identity(N);
              m(i, j) = t;
              out.push_back(m);
            }
      break;
    case Family::Sp: {
      int n = N / 2;
      for (auto t : basis) {
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) {
            Mat u = identity(N), l = identity(N);
            u(i, n + j) = F.add(u(i, n + j), t);
            l(n + i, j) = F.add(l(n + i, j), t);
            if (i != j) {
              u(j, n + i) = F.add(u(j, n + i), t);
              l(n + j, i) = F.add(l(n + j, i), t);
            }
            out.push_back(u);
            out.push_back(l);
          }
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j) {
              Mat m = identity(N);
              m(i, j) = t;
              m(n + j, n + i) = F.neg(t);
              out.push_back(m);
            }
      }
      break;
    }
    case Family::SOeven:
    case Family::SOodd:
      fail(Err::FamilyNotSupported,
           "no standard generating set for SO; supply generators explicitly");
  }
  return out;
}

inline Mat random_lie_element(const Field& F, const GroupSpec& g, std::mt19937_64& rng) {
  Mat x(g.N);
  for (const auto& b : lie_basis(F, g)) {
    auto c = static_cast<std::uint32_t>(uniform_index(rng, F.q()));
    if (c)
      x = mat_add(F, x, mat_scale(F, c, b));
  }
  return x;
}

// SL: uniform invertible matrix with its first row rescaled to det 1.
// SO/Sp: Cayley image of a random Lie element.
inline Mat random_group_element(const Field& F, const GroupSpec& g, std::mt19937_64& rng) {
  if (g.family == Family::SL) {
    for (;;) {
      Mat m(g.N);
      for (auto& v : m.a)
        v = static_cast<std::uint32_t>(uniform_index(rng, F.q()));
      std::uint32_t d = det(F, m);
      if (!d)
        continue;
      std::uint32_t di = F.inv(d);
      for (int j = 0; j < g.N; ++j)
        m(0, j) = F.mul(m(0, j), di);
      return m;
    }
  }
  for (;;) {
    Mat x = random_lie_element(F, g, rng);
    Mat inv;
    if (!try_inverse(F, mat_add(F, identity(g.N), x), inv))
      continue;
    return cayley_map(F, g.family, x);
  }
}

// "family:n:q[:modulus]" with the modulus as c0:c1:... low degree first.
struct GroupRef {
  GroupSpec spec;
  FieldPtr field;
  std::string str() const {
    std::string s = family_name(spec.family) + ":" + std::to_string(spec.n) + ":" +
                    std::to_string(field->q());
    if (!field->is_prime_field())
      s += ":" + field->modulus_string();
    return s;
  }
};

inline GroupRef parse_group_ref(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':'))
    parts.push_back(part);
  if (parts.size() < 3)
    fail(Err::ParseError, "group spec must be family:n:q[:modulus]");
  GroupRef ref;
  try {
    ref.spec = group_params(parse_family(parts[0]), std::stoi(parts[1]));
    auto q = std::stoull(parts[2]);
    auto [p, e] = prime_power(q);
    if (p == 0)
      fail(Err::NonPrimeCharacteristic, parts[2] + " is not a prime power");
    if (parts.size() > 3) {
      std::vector<std::uint32_t> mod;
      for (std::size_t i = 3; i < parts.size(); ++i)
        mod.push_back(static_cast<std::uint32_t>(std::stoul(parts[i])));
      ref.field = make_field(static_cast<std::uint32_t>(p), e, mod);
    } else {
      ref.field = make_field(static_cast<std::uint32_t>(p), e);
    }
  } catch (const std::logic_error&) {
    fail(Err::ParseError, "bad group spec '" + text + "'");
  }
  return ref;
}

} // namespace chev
