#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "groups.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace chev {

// Divides out the largest power of p dividing every entry.
inline std::vector<long long> character_reduce(std::vector<long long> eta, std::uint64_t p) {
  bool nonzero = false;
  for (auto e : eta)
    nonzero |= e != 0;
  if (!nonzero)
    fail(Err::ZeroEta, "character exponents are all zero");
  if (p < 2)
    fail(Err::UsageError, "p must be a prime");
  auto divisible = [&] {
    for (auto e : eta)
      if (e % static_cast<long long>(p) != 0)
        return false;
    return true;
  };
  while (divisible())
    for (auto& e : eta)
      e /= static_cast<long long>(p);
  return eta;
}

enum class CertMode { lie, adjoint };

inline std::string cert_mode_name(CertMode m) { return m == CertMode::lie ? "lie" : "adjoint"; }

struct ExplicitH {
  std::vector<Mat> h;
  std::string construction;  // which case of the construction applied
};

namespace impl {

inline int eta_mod(const Field& F, long long e) { return int(F.from_int(e)); }

// SOeven: h1, h2, h3 acting on the last two coordinates.
inline ExplicitH so_even_h(const Field& F, int n, int N, const std::vector<long long>& eta) {
  int m = 2 * n - 2;  // size of the embedded so_{2n-2}
  int c1 = m, c2 = m + 1;
  auto put = [&](Mat& h, int col, int i, std::uint32_t v) {
    h(i, col) = F.add(h(i, col), v);
    h(col, i) = F.sub(h(col, i), v);
  };
  int i0 = -1;
  for (int i = 0; i + 1 < n; ++i)
    if (eta_mod(F, eta[i]) != 0) {
      i0 = i;
      break;
    }
  Mat h1(N), h2(N), h3(N);
  for (int i = 0; i < m; i += 2) {
    put(h1, c1, i, 1);  // v_-
    put(h2, c2, i, 1);
    put(h3, c1, i + 1, 1);  // v_+
  }
  ExplicitH out;
  if (i0 < 0) {
    out.construction = "so_even:a_n=0";
  } else {
    put(h3, c1, 2 * i0, 1);  // e_{2 i0 - 1}, 1-indexed
    out.construction = "so_even:i0=" + std::to_string(i0 + 1);
  }
  out.h = {h1, h2, h3};
  return out;
}

// SOodd: h_-, h_+ in the last row and column.
inline std::vector<Mat> so_odd_h(const Field& F, int n) {
  int N = 2 * n + 1, c = 2 * n;
  Mat hm(N), hp(N);
  for (int i = 0; i < 2 * n; ++i) {
    Mat& h = (i % 2 == 0) ? hm : hp;
    h(i, c) = 1;
    h(c, i) = F.neg(1);
  }
  return {hm, hp};
}

inline ExplicitH sp_h(const Field& F, int n, const std::vector<long long>& eta) {
  int N = 2 * n, k = n - 1;
  std::uint32_t s = 0;
  for (int i = 0; i + 1 < n; ++i)
    s = F.add(s, F.from_int(eta[i]));
  std::uint32_t en = F.from_int(eta[n - 1]);
  bool plus = F.add(en, s) != 0;
  Mat h1(N), h2(N), h3(N);
  // A_1 has ones in the last column above the diagonal, A_2 = A_1^T
  for (int j = 0; j < k; ++j) {
    h1(j, k) = 1;
    h1(n + k, n + j) = F.neg(1);
    h2(k, j) = 1;
    h2(n + j, n + k) = F.neg(1);
    // B_3: last row and column of the upper-right block
    h3(j, n + k) = 1;
    h3(k, n + j) = 1;
  }
  h3(k, n + k) = 1;
  if (!plus) {
    h1(k, n + k) = 1;  // B_1
    h2(n + k, k) = 1;  // C_2
  }
  return {{h1, h2, h3}, plus ? "sp:eta_n+sum!=0" : "sp:eta_n-sum!=0"};
}

inline Mat random_skew(const Field& F, int m, int N, std::mt19937_64& rng) {
  Mat x(N);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto v = static_cast<std::uint32_t>(uniform_index(rng, F.q()));
      x(i, j) = v;
      x(j, i) = F.neg(v);
    }
  return x;
}

// Random element of the copy of sp_{2n-2} that skips index n-1 and 2n-1.
inline Mat random_sp_embedded(const Field& F, int n, std::mt19937_64& rng) {
  int k = n - 1, N = 2 * n;
  auto idx = [&](int i) { return i < k ? i : i + 1; };
  Mat x(N);
  auto rnd = [&] { return static_cast<std::uint32_t>(uniform_index(rng, F.q())); };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      auto a = rnd();
      x(idx(i), idx(j)) = a;
      x(idx(k + j), idx(k + i)) = F.neg(a);
    }
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      auto b = rnd(), c = rnd();
      x(idx(i), idx(k + j)) = b;
      x(idx(j), idx(k + i)) = b;
      x(idx(k + i), idx(j)) = c;
      x(idx(k + j), idx(i)) = c;
    }
  return x;
}

inline std::vector<std::uint32_t> flatten(const Mat& m) { return m.a; }

}  // namespace impl

// The explicit elements for a canonical non-maximal torus; eta is taken mod p.
inline ExplicitH explicit_h_matrices(const Field& F, const TorusSpec& t) {
  const GroupSpec& g = t.spec;
  if (t.maximal())
    fail(Err::HypothesisFailed, "the construction concerns non-maximal tori");
  if (g.family == Family::SL)
    fail(Err::FamilyNotSupported, "SL has no explicit construction; use the randomized route");
  if (g.r < 2)
    fail(Err::RankTooSmall, "rank at least 2 is required");
  torus_coordinate_basis(F, t);  // validates eta
  if (F.p() == 2 || (2 * g.N) % F.p() == 0)
    fail(Err::HypothesisFailed, "char(F_q) divides 2N");
  int n = g.n;
  switch (g.family) {
    case Family::SOeven:
      return impl::so_even_h(F, n, g.N, t.eta);
    case Family::SOodd: {
      ExplicitH e = impl::so_even_h(F, n, g.N, t.eta);
      for (auto& h : impl::so_odd_h(F, n))
        e.h.push_back(h);
      e.construction += "+so_odd:h-,h+";
      return e;
    }
    case Family::Sp:
      return impl::sp_h(F, n, t.eta);
    default:
      break;
  }
  fail(Err::FamilyNotSupported, "unknown family");
}

struct IndependenceCertificate {
  GroupSpec spec;
  std::vector<long long> eta;  // after character_reduce
  CertMode mode = CertMode::lie;
  std::uint64_t q = 0;
  std::uint64_t seed = 0;
  std::vector<Mat> witnesses;  // Lie elements, or group elements for the adjoint form
  int explicit_count = 0;
  std::string construction;
  int dim_t = 0;
  std::size_t expected_rank = 0;  // (ell + 1) dim t
  std::size_t achieved_rank = 0;
  std::size_t draws = 0;
  std::vector<std::string> flags;  // hypotheses not met for the adjoint form
};

constexpr int kDrawsPerSlot = 64;

// Stacks t, [g_1, t], ..., [g_ell, t] (or Ad_{g_i}(t)) and certifies full rank
// by exact elimination.
inline IndependenceCertificate rank_certificate(FieldPtr Fp, const TorusSpec& torus_in,
                                                CertMode mode, std::uint64_t seed) {
  const Field& F = *Fp;
  const GroupSpec& g = torus_in.spec;
  if (torus_in.maximal())
    fail(Err::HypothesisFailed,
         "a maximal torus cannot be certified: (ell+1) r exceeds dim G = ell r");
  if (g.r < 2)
    fail(Err::RankTooSmall, "rank at least 2 is required");
  std::uint64_t p = F.p();
  IndependenceCertificate c;
  c.spec = g;
  c.mode = mode;
  c.q = F.q();
  c.seed = seed;
  c.eta = character_reduce(torus_in.eta, p);
  TorusSpec t{g, c.eta};
  auto basis = canonical_torus_lie_basis(F, t);
  c.dim_t = int(basis.size());
  int ell = g.ell;
  c.expected_rank = std::size_t(ell + 1) * c.dim_t;

  if (mode == CertMode::lie) {
    if (p == 2 || (2 * std::uint64_t(g.N)) % p == 0)
      fail(Err::HypothesisFailed, "char(F_q) divides 2N");
  } else {
    if (p <= std::uint64_t(g.N))
      c.flags.push_back("char(F_q) <= N");
    if (std::log(double(F.q())) < 6.0 * g.r * std::log(2.0 * g.r))
      c.flags.push_back("q < (2r)^{6r}");
  }

  RowSpace rs(F, std::size_t(g.N) * g.N);
  for (const auto& b : basis)
    if (!rs.insert(impl::flatten(b)))
      fail(Err::RankDeficient, "torus basis is dependent");

  // Images of the torus basis under one witness; accepted only if all are new.
  auto images = [&](const Mat& w) {
    std::vector<Mat> out;
    if (mode == CertMode::lie) {
      for (const auto& b : basis)
        out.push_back(bracket(F, w, b));
    } else {
      Mat wi = inverse(F, w);
      for (const auto& b : basis)
        out.push_back(mat_mul(F, mat_mul(F, w, b), wi));
    }
    return out;
  };
  auto try_add = [&](const Mat& w) {
    auto im = images(w);
    RowSpace trial = rs;
    for (const auto& m : im)
      if (!trial.insert(impl::flatten(m)))
        return false;
    for (const auto& m : im)
      rs.insert(impl::flatten(m));
    c.witnesses.push_back(w);
    return true;
  };

  if (mode == CertMode::lie && g.family != Family::SL) {
    ExplicitH e = explicit_h_matrices(F, t);
    c.construction = e.construction;
    for (const auto& h : e.h) {
      if (!is_lie_member(F, g, h))
        fail(Err::TheoremViolation, "explicit element is not in the Lie algebra");
      if (!try_add(h))
        fail(Err::RankDeficient, "explicit element " + std::to_string(c.witnesses.size() + 1) +
                                     " (" + e.construction + ") does not add dim t");
    }
    c.explicit_count = int(e.h.size());
  } else {
    c.construction = mode == CertMode::lie ? "random:sl" : "random:adjoint";
  }

  auto rng = stream(seed, 0);
  auto draw = [&]() -> Mat {
    if (mode == CertMode::adjoint)
      return random_group_element(F, g, rng);
    switch (g.family) {
      case Family::SL:
        return random_lie_element(F, g, rng);
      case Family::SOeven:
      case Family::SOodd:
        return impl::random_skew(F, 2 * g.n - 2, g.N, rng);
      case Family::Sp:
        return impl::random_sp_embedded(F, g.n, rng);
    }
    return Mat(g.N);
  };
  while (int(c.witnesses.size()) < ell) {
    bool ok = false;
    for (int k = 0; k < kDrawsPerSlot && !ok; ++k) {
      ++c.draws;
      ok = try_add(draw());
    }
    if (!ok)
      fail(Err::RankDeficient, "slot " + std::to_string(c.witnesses.size() + 1) + " of " +
                                   std::to_string(ell) + " not filled after " +
                                   std::to_string(kDrawsPerSlot) + " draws");
  }
  c.achieved_rank = rs.rank();
  if (c.achieved_rank != c.expected_rank)
    fail(Err::RankDeficient, "rank " + std::to_string(c.achieved_rank) + " != " +
                                 std::to_string(c.expected_rank));
  return c;
}

// Independent recount of a certificate's rank from its witnesses.
inline std::size_t recount_rank(const Field& F, const IndependenceCertificate& c) {
  auto basis = canonical_torus_lie_basis(F, TorusSpec{c.spec, c.eta});
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& b : basis)
    rows.push_back(b.a);
  for (const auto& w : c.witnesses) {
    Mat wi = c.mode == CertMode::adjoint ? inverse(F, w) : Mat(w.n);
    for (const auto& b : basis)
      rows.push_back(c.mode == CertMode::lie ? bracket(F, w, b).a
                                             : mat_mul(F, mat_mul(F, w, b), wi).a);
  }
  return matrix_rank(F, rows, std::size_t(c.spec.N) * c.spec.N);
}

}  // namespace chev
