#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ball.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "logscaled.hpp"
#include "varieties.hpp"

namespace chev {

enum class Action { left, conj };

inline std::string action_name(Action a) { return a == Action::left ? "left" : "conj"; }

inline Action parse_action(const std::string& s) {
  if (s == "left")
    return Action::left;
  if (s == "conj")
    return Action::conj;
  fail(Err::UsageError, "action must be left or conj");
}

struct EscapeBound {
  LogScaled sum;     // sum_{d'=0}^{d} D^{d-d'+1}
  LogScaled closed;  // (1 + 1/(D-1)) D^{d+1} for D >= 2, d+1 for D = 1
};

inline EscapeBound escape_bound(int d, int D) {
  if (D < 1 || d < 0)
    fail(Err::UsageError, "escape_bound needs D >= 1 and d >= 0");
  EscapeBound b;
  if (D == 1) {
    b.sum = LogScaled::from_int(d + 1);
    b.closed = b.sum;
    return b;
  }
  // D + D^2 + ... + D^{d+1} = D (D^{d+1} - 1) / (D - 1)
  Real lnD = real_ln(D);
  Real top = Real(d + 1) * lnD;
  b.sum = LogScaled::pair(lnD + top + real_ln(-boost::multiprecision::expm1(-top)) - real_ln(D - 1),
                          std::nullopt);
  b.closed = LogScaled::pair(real_ln(D) - real_ln(D - 1) + top, std::nullopt);
  if (Real(d + 1) * lnD < Real(100000)) {
    BigInt p = ipow(BigInt(D), d + 1);
    b.sum.exact = Rational(BigInt(D) * (p - 1) / (D - 1));
    b.closed.exact = Rational(BigInt(D) * p, BigInt(D - 1));
  }
  return b;
}

// 11 D (N+1)^D ln N
inline LogScaled shitov_bound(int N, int D) {
  if (N < 2 || D < 1)
    fail(Err::UsageError, "shitov_bound needs N >= 2 and D >= 1");
  return LogScaled::from_ln(real_ln(11) + real_ln(D) + Real(D) * real_ln(N + 1) +
                            boost::multiprecision::log(real_ln(N)));
}

// 2 N' log2 N' + 4 N' for the linear case after linearization
inline Real shitov_linear_envelope(std::uint64_t Nprime) {
  Real n = Real(Nprime);
  return 2 * n * boost::multiprecision::log2(n) + 4 * n;
}

// (2r)^{4r^2+3r}
inline LogScaled rs_search_bound(int r) {
  return ls_ipow(2 * r, 4ull * r * r + 3ull * r);
}

struct EscapeCertificate {
  bool found = false;
  Mat witness;
  int k_found = -1;
  LogScaled bound;
  bool bound_holds = false;
  bool orbit_verified = false;  // Gx not inside V(F_q), witnessed
  std::uint32_t value = 0;       // nonzero value at witness.x of the first nonvanishing polynomial
  int poly_index = -1;
  std::size_t ball_size = 0;
};

struct SearchResult {
  bool found = false;
  int k = -1;
  Mat witness;
  bool closed = false;
  std::size_t ball_size = 0;
};

inline bool is_symmetric_with_identity(const Field& F, const std::vector<Mat>& gens) {
  if (gens.empty())
    return false;
  std::unordered_set<std::string> keys;
  for (const auto& g : gens)
    keys.insert(mat_key(F, g));
  if (!keys.count(mat_key(F, identity(gens.front().n))))
    return false;
  for (const auto& g : gens)
    if (!keys.count(mat_key(F, inverse(F, g))))
      return false;
  return true;
}

// Shortest g in A^k with pred(g); layer 0 is {e}. Within the first hitting
// layer the witness is the least matrix in row-major entry order.
inline SearchResult bfs_search(const FieldPtr& F, const std::vector<Mat>& gens,
                               const std::function<bool(const Mat&)>& pred, BallOptions opt,
                               int max_radius = 1 << 30) {
  SearchResult res;
  int n = gens.front().n;
  Mat e = identity(n);
  if (pred(e)) {
    res.found = true;
    res.k = 0;
    res.witness = e;
    res.ball_size = 1;
    return res;
  }
  Ball ball(F, gens, opt);
  std::size_t lo = 0;
  for (int t = 1;; ++t) {
    std::size_t hi = ball.size();
    std::optional<Mat> best;
    for (std::size_t i = lo; i < hi; ++i) {
      const Mat& g = ball.elements()[i];
      if ((!best || g < *best) && pred(g))
        best = g;
    }
    if (best) {
      res.found = true;
      res.k = t;
      res.witness = *best;
      res.ball_size = ball.size();
      return res;
    }
    if (t >= max_radius || !ball.step()) {
      res.closed = ball.closed();
      res.ball_size = ball.size();
      return res;
    }
    lo = hi;
  }
}

inline Mat act(const Field& F, Action a, const Mat& g, const Mat& x) {
  if (a == Action::left)
    return mat_mul(F, g, x);
  return mat_mul(F, mat_mul(F, g, x), inverse(F, g));
}

// First polynomial not vanishing at the point, or -1.
inline int nonvanishing(const Field& F, const VarietySpec& V, const std::vector<std::uint32_t>& pt,
                        std::uint32_t* value = nullptr) {
  for (std::size_t i = 0; i < V.polys.size(); ++i) {
    std::uint32_t v = evaluate(F, V.polys[i], pt);
    if (v) {
      if (value)
        *value = v;
      return static_cast<int>(i);
    }
  }
  return -1;
}

struct EscapeInstance {
  FieldPtr F;
  std::vector<Mat> gens;  // symmetric, contains the identity
  VarietySpec variety;
  Mat point;
  Action action = Action::left;
};

inline void check_instance(const EscapeInstance& inst) {
  if (inst.gens.empty())
    fail(Err::NotGenerating, "empty generating set");
  if (!is_symmetric_with_identity(*inst.F, inst.gens))
    fail(Err::HypothesisFailed, "generating set must contain the identity and be closed under inverses");
  int N = inst.gens.front().n;
  if (inst.point.n != N)
    fail(Err::ShapeMismatch, "point must be an N x N matrix");
  if (inst.variety.ambient != N * N)
    fail(Err::AmbientMismatch, "variety ambient " + std::to_string(inst.variety.ambient) +
                                   " differs from N^2 = " + std::to_string(N * N));
}

// Is the whole <A>-orbit of the point inside V(F_q)? Saturates the ball.
inline bool orbit_contained(const EscapeInstance& inst, BallOptions opt) {
  Ball ball(inst.F, inst.gens, opt);
  ball.saturate();
  const Field& F = *inst.F;
  for (const auto& g : ball.elements())
    if (nonvanishing(F, inst.variety, act(F, inst.action, g, inst.point).a) >= 0)
      return false;
  return nonvanishing(F, inst.variety, inst.point.a) < 0;
}

// A found witness certifies orbit non-containment, so the bound applies to it.
inline EscapeCertificate escape_point(const EscapeInstance& inst, BallOptions opt = {}) {
  check_instance(inst);
  const Field& F = *inst.F;
  EscapeCertificate cert;
  cert.bound = escape_bound(inst.variety.dim, inst.variety.deg).sum;
  auto pred = [&](const Mat& g) {
    return nonvanishing(F, inst.variety, act(F, inst.action, g, inst.point).a) >= 0;
  };
  auto res = bfs_search(inst.F, inst.gens, pred, opt);
  cert.ball_size = res.ball_size;
  if (!res.found)  // the ball closed, so the scan covered the whole orbit
    fail(Err::NoEscapeWithinBall, "every element of <A> keeps the point inside V(F_q)");
  cert.found = true;
  cert.witness = res.witness;
  cert.k_found = res.k;
  cert.poly_index = nonvanishing(F, inst.variety, act(F, inst.action, res.witness, inst.point).a,
                                 &cert.value);
  cert.orbit_verified = true;
  cert.bound_holds = ls_compare(LogScaled::from_int(res.k), cert.bound) != Cmp::Greater;
  return cert;
}

// ---- linearization ----

struct Linearized {
  int N = 0;
  int D = 0;
  int Nprime = 0;  // (N+1)^D
  Poly linear;     // over the Nprime^2 entries of rho_D(M), row-major
};

// iota(M) = diag(1, M); rho_D(M) = iota(M)^{tensor D}.
inline Mat iota(const Mat& m) {
  Mat r(m.n + 1);
  r(0, 0) = 1;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      r(i + 1, j + 1) = m(i, j);
  return r;
}

inline Mat rho(const Field& F, const Mat& m, int D) {
  Mat base = iota(m);
  Mat r = base;
  for (int k = 1; k < D; ++k) {
    Mat t(r.n * base.n);
    for (int i = 0; i < r.n; ++i)
      for (int j = 0; j < r.n; ++j)
        if (r(i, j))
          for (int a = 0; a < base.n; ++a)
            for (int b = 0; b < base.n; ++b)
              t(i * base.n + a, j * base.n + b) = F.mul(r(i, j), base(a, b));
    r = std::move(t);
  }
  return r;
}

// Variables x_{(i-1)N+j} are the entries g_{ij}. Each monomial is padded to
// degree D with the constant entry iota_{00} = 1; its D factors (i_k, j_k)
// sorted give the tensor coordinate ((i_1..i_D), (j_1..j_D)) in base N+1.
inline Linearized linearize(const Field& F, int N, int D, const Poly& P) {
  if (P.nvars != N * N)
    fail(Err::ArityMismatch, "polynomial must be over the N^2 matrix entries");
  if (D < 1)
    fail(Err::UsageError, "D must be at least 1");
  if (P.degree() > D)
    fail(Err::NotHomogenizable, "polynomial degree " + std::to_string(P.degree()) +
                                    " exceeds D = " + std::to_string(D));
  Linearized L;
  L.N = N;
  L.D = D;
  int base = N + 1;
  L.Nprime = 1;
  for (int k = 0; k < D; ++k)
    L.Nprime *= base;
  L.linear.nvars = L.Nprime * L.Nprime;
  for (const auto& [e, c] : P.terms) {
    std::vector<std::pair<int, int>> factors;
    for (int v = 0; v < P.nvars; ++v)
      for (int k = 0; k < e[v]; ++k)
        factors.emplace_back(v / N + 1, v % N + 1);
    while (int(factors.size()) < D)
      factors.emplace_back(0, 0);
    std::sort(factors.begin(), factors.end());
    int row = 0, col = 0;
    for (auto [i, j] : factors) {
      row = row * base + i;
      col = col * base + j;
    }
    std::vector<int> ex(L.linear.nvars, 0);
    ex[row * L.Nprime + col] = 1;
    poly_add_term(F, L.linear, ex, c);
  }
  return L;
}

struct ShitovReport {
  EscapeCertificate cert;
  LogScaled bound;           // 11 D (N+1)^D ln N
  Real linear_envelope = 0;  // 2N' log2 N' + 4N', meaningful for D = 1
  int Nprime = 0;
  bool below_bound = false;
  bool within_envelope = false;
  bool via_linearize = false;
};

// Escape of <A> from {P = 0} for every P in V (left action on the identity).
inline ShitovReport shitov_escape(const FieldPtr& F, const std::vector<Mat>& gens,
                                  const VarietySpec& V, bool via_linearize, BallOptions opt = {}) {
  if (gens.empty())
    fail(Err::NotGenerating, "empty generating set");
  int N = gens.front().n;
  int D = 1;
  for (const auto& p : V.polys)
    D = std::max(D, p.degree());
  ShitovReport rep;
  rep.via_linearize = via_linearize;
  rep.bound = shitov_bound(N, D);
  int base = N + 1;
  rep.Nprime = 1;
  for (int k = 0; k < D; ++k)
    rep.Nprime *= base;
  rep.linear_envelope = shitov_linear_envelope(rep.Nprime);
  SearchResult res;
  if (!via_linearize) {
    EscapeInstance inst{F, gens, V, identity(N), Action::left};
    check_instance(inst);
    res = bfs_search(F, gens, [&](const Mat& g) { return nonvanishing(*F, V, g.a) >= 0; }, opt);
  } else {
    VarietySpec lin;
    std::vector<Linearized> parts;
    for (const auto& p : V.polys)
      parts.push_back(linearize(*F, N, D, p));
    std::vector<Mat> lg;
    for (const auto& g : gens)
      lg.push_back(rho(*F, g, D));
    if (!is_symmetric_with_identity(*F, lg))
      fail(Err::HypothesisFailed, "generating set must contain the identity and be closed under inverses");
    auto pred = [&](const Mat& g) {
      for (const auto& L : parts)
        if (evaluate(*F, L.linear, g.a))
          return true;
      return false;
    };
    res = bfs_search(F, lg, pred, opt);
  }
  rep.cert.ball_size = res.ball_size;
  if (!res.found)
    fail(Err::NoEscapeWithinBall, "<A> lies inside the variety");
  rep.cert.found = true;
  rep.cert.k_found = res.k;
  rep.cert.bound = rep.bound;
  if (via_linearize) {
    // recover the group element from rho_D(g): its block at pad index 0 is iota(g)
    Mat g(N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        g(i, j) = res.witness((i + 1) * (rep.Nprime / base), (j + 1) * (rep.Nprime / base));
    rep.cert.witness = g;
  } else {
    rep.cert.witness = res.witness;
  }
  rep.cert.poly_index = nonvanishing(*F, V, rep.cert.witness.a, &rep.cert.value);
  if (rep.cert.poly_index < 0)
    fail(Err::TheoremViolation, "linearized witness does not escape the original variety");
  rep.below_bound = ls_compare(LogScaled::from_int(res.k), rep.bound) == Cmp::Less;
  rep.within_envelope = Real(res.k) <= rep.linear_envelope;
  rep.cert.bound_holds = rep.below_bound;
  rep.cert.orbit_verified = true;
  return rep;
}

inline EscapeCertificate find_regular_semisimple(const FieldPtr& F, const GroupSpec& spec,
                                                 const std::vector<Mat>& gens, BallOptions opt = {}) {
  if (gens.empty())
    fail(Err::NotGenerating, "empty generating set");
  EscapeCertificate cert;
  cert.bound = rs_search_bound(spec.r);
  auto res = bfs_search(F, gens, [&](const Mat& g) { return is_regular_semisimple(*F, g); }, opt);
  cert.ball_size = res.ball_size;
  if (!res.found)
    fail(Err::NoEscapeWithinBall, "no regular semisimple element in <A>");
  cert.found = true;
  cert.witness = res.witness;
  cert.k_found = res.k;
  cert.value = char_poly(*F, res.witness).disc;
  cert.bound_holds = ls_compare(LogScaled::from_int(res.k), cert.bound) != Cmp::Greater;
  return cert;
}

// ---- seeded instance generation ----

// Random polynomial of total degree exactly deg in nvars variables.
inline Poly random_poly(const Field& F, int nvars, int deg, std::mt19937_64& rng, int terms = 4) {
  Poly p = poly_const(nvars, 0);
  while (p.degree() != deg || p.is_zero()) {
    p = poly_const(nvars, 0);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(nvars, 0);
      int d = t == 0 ? deg : static_cast<int>(uniform_index(rng, deg + 1));
      for (int s = 0; s < d; ++s)
        e[uniform_index(rng, nvars)]++;
      auto c = static_cast<std::uint32_t>(uniform_index(rng, F.q()));
      poly_add_term(F, p, e, c);
    }
  }
  return p;
}

// s random elements, their inverses and the identity.
inline std::vector<Mat> random_symmetric_set(const Field& F, const GroupSpec& g, int s,
                                             std::mt19937_64& rng) {
  std::vector<Mat> raw;
  for (int i = 0; i < s; ++i)
    raw.push_back(random_group_element(F, g, rng));
  return symmetrize(F, raw);
}

} // namespace chev
