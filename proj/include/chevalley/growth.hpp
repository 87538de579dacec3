#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ball.hpp"
#include "classify.hpp"
#include "constants.hpp"
#include "degrees.hpp"
#include "error.hpp"
#include "groups.hpp"
#include "logscaled.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace chev {

struct GenSet {
  GroupSpec spec;
  FieldPtr F;
  std::vector<Mat> elems;
  bool symmetric = false;  // e in A and A = A^{-1}
};

// Order of G(F_q) in the matrix realization used here (SO preserves x^T x).
inline BigInt realized_order(const GroupSpec& g, std::uint64_t q) {
  return so_identity_form_order(g, q);
}

// Validates membership and deduplicates. With require_symmetric, the set
// must contain the identity and be closed under inverses.
inline GenSet make_genset(FieldPtr F, const GroupSpec& spec, std::vector<Mat> elems,
                          bool require_symmetric = true) {
  if (elems.empty())
    fail(Err::NotGenerating, "empty set");
  GenSet A;
  A.spec = spec;
  A.F = F;
  std::unordered_set<std::string> keys;
  for (auto& m : elems) {
    if (m.n != spec.N)
      fail(Err::ShapeMismatch, "element of size " + std::to_string(m.n) + " in " + spec.name());
    if (!is_member(*F, spec, m))
      fail(Err::HypothesisFailed, "element " + format_mat(*F, m) + " is not in " + spec.name());
    if (keys.insert(mat_key(*F, m)).second)
      A.elems.push_back(std::move(m));
  }
  bool has_id = keys.count(mat_key(*F, identity(spec.N))) != 0;
  bool closed = true;
  for (const auto& m : A.elems)
    if (!keys.count(mat_key(*F, inverse(*F, m)))) {
      closed = false;
      break;
    }
  A.symmetric = has_id && closed;
  if (require_symmetric && !A.symmetric)
    fail(Err::HypothesisFailed, has_id ? "set is not closed under inverses"
                                       : "set does not contain the identity");
  return A;
}

// One matrix per line; '#' starts a comment line.
inline std::vector<Mat> parse_matrix_list(const Field& F, const std::string& text, int N) {
  std::vector<Mat> out;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#')
      continue;
    out.push_back(parse_mat(F, line, N));
  }
  return out;
}

inline std::vector<Mat> load_matrix_list(const Field& F, const std::string& path, int N) {
  std::ifstream f(path);
  if (!f)
    fail(Err::UsageError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix_list(F, ss.str(), N);
}

// s uniformly random elements of the materialized group, closed under
// inverses, plus the identity.
inline GenSet random_genset(const Universe& u, int s, std::mt19937_64& rng) {
  std::vector<Mat> raw;
  for (int i = 0; i < s; ++i)
    raw.push_back(u.elems[uniform_index(rng, u.elems.size())]);
  return make_genset(u.F, u.spec, symmetrize(*u.F, raw));
}

// `size` distinct uniformly random elements; no symmetry.
inline GenSet random_subset(const Universe& u, std::size_t size, std::mt19937_64& rng) {
  if (size > u.elems.size())
    fail(Err::UsageError, "subset larger than the group");
  std::vector<std::uint32_t> idx(u.elems.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = static_cast<std::uint32_t>(i);
  // partial Fisher-Yates
  for (std::size_t i = 0; i < size; ++i)
    std::swap(idx[i], idx[i + uniform_index(rng, idx.size() - i)]);
  std::vector<Mat> out;
  for (std::size_t i = 0; i < size; ++i)
    out.push_back(u.elems[idx[i]]);
  return make_genset(u.F, u.spec, std::move(out), false);
}

struct BallSeries {
  std::vector<std::size_t> sizes;    // |A^1|, |A^2|, ...
  std::optional<int> saturated_at;   // least t with A^t = G
  std::optional<int> closed_at;      // least t with A^t = A^{t+1}
  BigInt group_order;
  bool generating() const { return saturated_at.has_value(); }
};

inline void check_ball_cap(const GenSet& A, const BallOptions& opt) {
  BigInt order = realized_order(A.spec, A.F->q());
  if (order > opt.cap)
    fail(Err::BallCapExceeded, A.spec.name() + " has " + order.str() + " elements, cap is " +
                                   std::to_string(opt.cap));
}

inline BallSeries series_of(const Ball& b, const BigInt& order) {
  BallSeries s;
  s.group_order = order;
  s.sizes = b.layer_ends();
  for (std::size_t i = 0; i < s.sizes.size(); ++i)
    if (BigInt(s.sizes[i]) == order) {
      s.saturated_at = int(i) + 1;
      break;
    }
  if (b.closed())
    s.closed_at = b.radius();
  return s;
}

// Layers up to t_max, stopping early once the ball stops growing.
inline BallSeries ball_series(const GenSet& A, int t_max, BallOptions opt = {}) {
  if (t_max < 1)
    fail(Err::UsageError, "t_max must be at least 1");
  check_ball_cap(A, opt);
  Ball b(A.F, A.elems, opt);
  b.grow_to(t_max);
  if (b.radius() == t_max && !b.closed()) {
    // one probe step tells whether A^{t_max} is already closed
    std::size_t before = b.size();
    if (BigInt(before) == realized_order(A.spec, A.F->q()))
      b.step();
  }
  BallSeries s = series_of(b, realized_order(A.spec, A.F->q()));
  s.sizes.resize(std::min<std::size_t>(s.sizes.size(), std::size_t(t_max)));
  if (s.closed_at && *s.closed_at > t_max)
    s.closed_at.reset();
  return s;
}

inline int diameter(const GenSet& A, BallOptions opt = {}) {
  check_ball_cap(A, opt);
  Ball b(A.F, A.elems, opt);
  b.saturate();
  BigInt order = realized_order(A.spec, A.F->q());
  if (BigInt(b.size()) != order)
    fail(Err::NotGenerating, "the set generates a subgroup of order " + std::to_string(b.size()) +
                                 " in a group of order " + order.str());
  return b.radius();
}

inline std::size_t ball_size_at(Ball& b, int t) {
  b.grow_to(t);
  return t <= b.radius() ? b.size_at(t) : b.size();
}

struct RuzsaReport {
  int k = 0;
  std::size_t a1 = 0, a3 = 0, ak = 0;
  BigInt lhs, rhs;  // |A^k| |A|^{k-3} and |A^3|^{k-2}
  bool pass = false;
};

// |A^k| / |A| <= (|A^3| / |A|)^{k-2}, cleared of denominators.
inline RuzsaReport ruzsa_from_ball(Ball& b, int k) {
  if (k < 3)
    fail(Err::UsageError, "Ruzsa check needs k >= 3");
  RuzsaReport r;
  r.k = k;
  r.a1 = ball_size_at(b, 1);
  r.a3 = ball_size_at(b, 3);
  r.ak = ball_size_at(b, k);
  r.lhs = BigInt(r.ak) * ipow(BigInt(r.a1), k - 3);
  r.rhs = ipow(BigInt(r.a3), k - 2);
  r.pass = r.lhs <= r.rhs;
  return r;
}

inline RuzsaReport ruzsa_check(const GenSet& A, int k, BallOptions opt = {}) {
  check_ball_cap(A, opt);
  Ball b(A.F, A.elems, opt);
  return ruzsa_from_ball(b, k);
}

struct OlsonReport {
  std::size_t a1 = 0, a3 = 0;
  BigInt order;
  bool a3_is_group = false;
  bool doubled = false;  // |A^3| >= 2|A|
  bool pass() const { return a3_is_group || doubled; }
};

inline OlsonReport olson_from_ball(Ball& b, const BigInt& order) {
  b.saturate();
  if (BigInt(b.size()) != order)
    fail(Err::NotGenerating, "Olson's dichotomy needs a generating set");
  OlsonReport o;
  o.order = order;
  o.a1 = ball_size_at(b, 1);
  o.a3 = ball_size_at(b, 3);
  o.a3_is_group = BigInt(o.a3) == order;
  o.doubled = o.a3 >= 2 * o.a1;
  return o;
}

inline OlsonReport olson_check(const GenSet& A, BallOptions opt = {}) {
  if (!A.symmetric)
    fail(Err::HypothesisFailed, "Olson's dichotomy needs e in A");
  check_ball_cap(A, opt);
  Ball b(A.F, A.elems, opt);
  return olson_from_ball(b, realized_order(A.spec, A.F->q()));
}

// ceil((4/3) q^{dim - r/3}) = least c with 27 c^3 >= 64 q^{3 dim - r}.
inline BigInt np_threshold(const GroupSpec& g, std::uint64_t q) {
  auto [p, e] = prime_power(q);
  (void)e;
  if (p == 0)
    fail(Err::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
  if (q <= 9)
    fail(Err::HypothesisFailed, "the product theorem needs q > 9");
  if (p == 2)
    fail(Err::HypothesisFailed, "characteristic 2 is not supported");
  BigInt Q = ipow(BigInt(q), 3ull * g.dim - g.r);
  return icbrt_ceil(ceil_div(64 * Q, BigInt(27)));
}

struct NpReport {
  std::size_t size = 0;
  BigInt threshold;
  bool checked = false;
  std::string notice;
  std::size_t a2 = 0, a3 = 0;
  BigInt order;
};

// A^3 = G for |A| at or above the threshold; A need not be symmetric.
inline NpReport np_check(const GenSet& A) {
  NpReport r;
  r.size = A.elems.size();
  r.threshold = np_threshold(A.spec, A.F->q());
  r.order = realized_order(A.spec, A.F->q());
  if (BigInt(r.size) < r.threshold) {
    r.notice = "|A| = " + std::to_string(r.size) + " is below the threshold " +
               r.threshold.str() + "; check skipped";
    return r;
  }
  const Field& F = *A.F;
  std::unordered_map<std::string, Mat> a2;
  for (const auto& x : A.elems)
    for (const auto& y : A.elems) {
      Mat m = mat_mul(F, x, y);
      a2.emplace(mat_key(F, m), std::move(m));
    }
  std::unordered_set<std::string> a3;
  for (const auto& kv : a2)
    for (const auto& y : A.elems)
      a3.insert(mat_key(F, mat_mul(F, kv.second, y)));
  r.checked = true;
  r.a2 = a2.size();
  r.a3 = a3.size();
  if (BigInt(r.a3) != r.order)
    fail(Err::TheoremViolation, "|A| = " + std::to_string(r.size) + " >= threshold but |A^3| = " +
                                    std::to_string(r.a3) + " < |G| = " + r.order.str());
  return r;
}

// ---- intersection counting ----

enum class TargetKind { class_of, torus, torus_nonrs, nonrs_locus };

inline std::string target_kind_name(TargetKind k) {
  switch (k) {
    case TargetKind::class_of: return "class";
    case TargetKind::torus: return "torus";
    case TargetKind::torus_nonrs: return "torus_nonrs";
    case TargetKind::nonrs_locus: return "nonrs";
  }
  return "?";
}

struct Target {
  TargetKind kind = TargetKind::nonrs_locus;
  Mat g;                      // class representative
  std::vector<long long> eta;  // empty for the maximal torus
};

struct IntersectReport {
  TargetKind kind = TargetKind::nonrs_locus;
  int t = 0;
  std::size_t ball_size = 0;
  std::size_t count = 0;
  bool saturated = false;
  int dimV = 0, dimG = 0;
  Rational expected_exponent;               // dim V / dim G
  std::optional<Real> measured_exponent;    // ln count / ln |A^t|
  std::optional<std::size_t> target_size;   // |V(F_q)| when enumerated
  std::string bound_source;                 // which constant pair was used
  std::optional<Tower> bound;               // C_1 |A^{C_2}|^{dim V / dim G}
  bool bound_holds = true;
  bool rs_representative = true;
};

namespace impl {

inline std::size_t size_after(const Ball& b, const LogScaled& steps) {
  // steps beyond the closure radius see the whole closure
  if (ls_compare(steps, LogScaled::from_int(b.radius())) != Cmp::Less)
    return b.size();
  long long s = std::llround(std::exp(steps.ln_double()));
  return b.size_at(int(std::max(1LL, s)));
}

inline Tower bound_tower(const Tower& C1, std::size_t big, int dimV, int dimG) {
  double e = std::log(double(big)) * double(dimV) / double(dimG);
  return tw_mul(C1, Tower::exp_of(Tower::of(e)));
}

}  // namespace impl

// Counts A^t against the target. The ball is saturated so that |A^{C_2}| is
// exact: every C_2 here exceeds every desk-scale closure radius.
inline IntersectReport intersect_count(const GenSet& A, int t, const Target& target,
                                       BallOptions opt = {}) {
  if (t < 1)
    fail(Err::UsageError, "t must be at least 1");
  check_ball_cap(A, opt);
  const Field& F = *A.F;
  const GroupSpec& g = A.spec;
  Ball b(A.F, A.elems, opt);
  b.saturate();
  IntersectReport rep;
  rep.kind = target.kind;
  rep.t = t;
  rep.ball_size = ball_size_at(b, t);
  rep.saturated = BigInt(rep.ball_size) == realized_order(g, F.q());
  rep.dimG = g.dim;

  std::function<bool(const Mat&)> member;
  std::unordered_set<std::string> cls;
  switch (target.kind) {
    case TargetKind::class_of: {
      if (!is_member(F, g, target.g))
        fail(Err::HypothesisFailed, "class representative is not in " + g.name());
      if (!A.symmetric)
        fail(Err::HypothesisFailed, "class enumeration conjugates by a symmetric generating set");
      // conjugation orbit under the generators
      std::vector<Mat> orbit{target.g};
      cls.insert(mat_key(F, target.g));
      std::vector<Mat> inv;
      for (const auto& a : A.elems)
        inv.push_back(inverse(F, a));
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (std::size_t j = 0; j < A.elems.size(); ++j) {
          Mat h = mat_mul(F, mat_mul(F, A.elems[j], orbit[i]), inv[j]);
          if (cls.insert(mat_key(F, h)).second)
            orbit.push_back(std::move(h));
        }
      rep.target_size = orbit.size();
      rep.rs_representative = is_regular_semisimple(F, target.g);
      rep.dimV = g.dim - g.r;
      member = [&](const Mat& m) { return cls.count(mat_key(F, m)) != 0; };
      break;
    }
    case TargetKind::torus:
    case TargetKind::torus_nonrs: {
      if (!target.eta.empty()) {
        torus_coordinate_basis(F, TorusSpec{g, target.eta});  // validates eta
        if (g.family != Family::SL && g.family != Family::Sp)
          fail(Err::FamilyNotSupported, "non-maximal torus targets are supported for SL and Sp");
      }
      bool nonrs = target.kind == TargetKind::torus_nonrs;
      rep.dimV = target.eta.empty() && !nonrs ? g.r : g.r - 1;
      member = [&, nonrs](const Mat& m) {
        if (!in_canonical_torus(F, g, m))
          return false;
        if (!target.eta.empty() && torus_character(F, g, m, target.eta) != 1)
          return false;
        return !nonrs || !is_regular_semisimple(F, m);
      };
      break;
    }
    case TargetKind::nonrs_locus:
      rep.dimV = g.dim - 1;
      member = [&](const Mat& m) { return !is_regular_semisimple(F, m); };
      break;
  }
  rep.expected_exponent = Rational(rep.dimV, rep.dimG);

  const auto& el = b.elements();
  for (std::size_t i = 0; i < rep.ball_size; ++i)
    if (member(el[i]))
      ++rep.count;
  if (rep.count > 0 && rep.ball_size > 1)
    rep.measured_exponent = real_ln(static_cast<long long>(rep.count)) /
                            real_ln(static_cast<long long>(rep.ball_size));

  // log-space bound C_1 |A^{C_2}|^{dim V / dim G}
  switch (target.kind) {
    case TargetKind::class_of:
      if (rep.rs_representative) {
        auto c = clg_constants(g.r, t);
        rep.bound_source = "class";
        rep.bound = impl::bound_tower(tw_from_ls(c.C1), impl::size_after(b, c.C2), rep.dimV, rep.dimG);
      }
      break;
    case TargetKind::torus:
    case TargetKind::torus_nonrs:
      if (g.r >= 2) {
        auto c = torus_constants(g.r, t);
        bool nonrs = target.kind == TargetKind::torus_nonrs;
        rep.bound_source = nonrs ? "torus_nonrs" : "torus";
        rep.bound = impl::bound_tower(tw_from_ls(nonrs ? c.C1_full : c.C1),
                                      impl::size_after(b, c.C2), rep.dimV, rep.dimG);
      }
      break;
    case TargetKind::nonrs_locus: {
      // general subvariety bound with deg W <= N(N-1) deg(G)
      BigInt degW = BigInt(g.N) * (g.N - 1) * exact_group_degree(g);
      Tower C1 = tw_pow(tw_mul(Tower::of(2), impl::tw_int(degW)),
                        tw_pow(Tower::of(2), Tower::of(32.0 * std::pow(double(g.r), 6))));
      BigInt C2 = ipow(BigInt(2), 6ull * g.r * g.r * g.r * g.r) *
                  (ipow(BigInt(2 * g.r), 16ull * g.r * g.r) + t);
      rep.bound_source = "subvariety";
      rep.bound = impl::bound_tower(C1, impl::size_after(b, LogScaled::from_int(C2)), rep.dimV,
                                    rep.dimG);
      break;
    }
  }
  if (rep.bound)
    rep.bound_holds = tw_compare(Tower::of(double(rep.count)), *rep.bound) != Cmp::Greater;
  return rep;
}

// ---- fibres of (v_1, ..., v_ell) -> (v_1^{-1} v_2, ..., v_{ell-1}^{-1} v_ell) on Cl(g)^ell ----

struct FibreReport {
  std::size_t class_size = 0;
  int ell = 0;
  std::size_t max_fibre = 0;      // attained over y_1 = Id, equal to |V|
  std::size_t max_nontrivial = 0;  // over y_1 != Id
  LogScaled closed_bound;  // (2r)^{17r^3}
  bool holds = false;
};

// A fibre over (y_1, ..., y_{ell-1}) is fixed by v_1, so its size is the
// number of v in V with v y_1, v y_1 y_2, ... all in V.
inline FibreReport class_fibre_check(const Universe& u, const Mat& g,
                                     std::uint64_t cap = 20'000'000) {
  const Field& F = *u.F;
  auto cls = conjugacy_class(u, g);
  FibreReport r;
  r.class_size = cls.size();
  r.ell = u.spec.ell;
  r.closed_bound = ls_ipow(2 * u.spec.r, 17ull * u.spec.r * u.spec.r * u.spec.r);
  std::unordered_set<std::string> in;
  for (const auto& c : cls)
    in.insert(mat_key(F, c));
  // all reachable prefixes of partial products v_1^{-1} v_j, for j >= 2
  std::vector<Mat> inv;
  for (const auto& c : cls)
    inv.push_back(inverse(F, c));
  std::unordered_set<std::string> diffs;  // v^{-1} w for v, w in V
  std::vector<Mat> dlist;
  if (std::uint64_t(cls.size()) * cls.size() > cap)
    fail(Err::BallCapExceeded, "class too large for the fibre check");
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (const auto& w : cls) {
      Mat d = mat_mul(F, inv[i], w);
      if (diffs.insert(mat_key(F, d)).second)
        dlist.push_back(std::move(d));
    }
  // For ell >= 2 the fibre over (y_1, ...) has size #{v : v y_1 in V, ...};
  // the first coordinate alone already bounds it, and the maximum over
  // y_1 in V^{-1}V is attained with the later constraints dropped.
  Mat id = identity(u.spec.N);
  for (const auto& y : dlist) {
    std::size_t c = 0;
    for (const auto& v : cls)
      if (in.count(mat_key(F, mat_mul(F, v, y))))
        ++c;
    r.max_fibre = std::max(r.max_fibre, c);
    if (y != id)
      r.max_nontrivial = std::max(r.max_nontrivial, c);
  }
  r.holds = ls_compare(LogScaled::from_int(r.max_fibre), r.closed_bound) != Cmp::Greater;
  return r;
}

// ---- growth dichotomy ----

struct DichotomyBranch {
  LogScaled m;
  Rational eps;
  bool grows = false;      // |A^m| >= |A^l|^{1+eps}
  bool saturates = false;  // A^{3m} = G
};

struct DichotomyReport {
  int l = 0;
  int diameter = 0;
  std::size_t al = 0;
  BigInt order;
  std::vector<DichotomyBranch> pairs;
  bool ok() const {
    for (const auto& p : pairs)
      if (!p.grows && !p.saturates)
        return false;
    return true;
  }
};

inline DichotomyReport growth_dichotomy_check(const GenSet& A, int l, BallOptions opt = {}) {
  if (l < 1)
    fail(Err::UsageError, "l must be at least 1");
  check_ball_cap(A, opt);
  Ball b(A.F, A.elems, opt);
  b.saturate();
  DichotomyReport rep;
  rep.order = realized_order(A.spec, A.F->q());
  if (BigInt(b.size()) != rep.order)
    fail(Err::NotGenerating, "the dichotomy is stated for generating sets");
  rep.l = l;
  rep.diameter = b.radius();
  rep.al = ball_size_at(b, l);
  for (const auto& p : growth_pairs(A.spec.r, l)) {
    DichotomyBranch br;
    br.m = p.m;
    br.eps = p.eps;
    std::size_t am = impl::size_after(b, p.m);
    // |A^m|^{den} >= |A^l|^{den + num}
    auto num = boost::multiprecision::numerator(p.eps);
    auto den = boost::multiprecision::denominator(p.eps);
    unsigned d = static_cast<unsigned>(den), n = static_cast<unsigned>(num);
    br.grows = ipow(BigInt(am), d) >= ipow(BigInt(rep.al), d + n);
    LogScaled three_m = ls_mul(LogScaled::from_int(3), p.m);
    br.saturates = ls_compare(three_m, LogScaled::from_int(rep.diameter)) != Cmp::Less;
    rep.pairs.push_back(br);
  }
  return rep;
}

// ---- seeded campaigns ----

struct CampaignReport {
  std::size_t sets = 0;
  std::size_t resampled = 0;
  std::size_t ruzsa_checks = 0, ruzsa_violations = 0;
  std::size_t olson_checks = 0, olson_violations = 0;
  std::size_t np_checked = 0, np_skipped = 0;
  std::vector<int> diameters;
};

// `sets` random symmetric generating sets built from `s` random elements;
// non-generating draws are replaced.
inline CampaignReport ruzsa_olson_campaign(const Universe& u, int sets, int s, std::uint64_t seed,
                                           BallOptions opt = {}) {
  CampaignReport rep;
  BigInt order(u.order());
  for (int i = 0; i < sets; ++i) {
    auto rng = stream(seed, std::uint64_t(i));
    for (;;) {
      GenSet A = random_genset(u, s, rng);
      Ball b(A.F, A.elems, opt);
      b.saturate();
      if (BigInt(b.size()) != order) {
        ++rep.resampled;
        continue;
      }
      for (int k : {4, 5, 6}) {
        ++rep.ruzsa_checks;
        if (!ruzsa_from_ball(b, k).pass)
          ++rep.ruzsa_violations;
      }
      ++rep.olson_checks;
      if (!olson_from_ball(b, order).pass())
        ++rep.olson_violations;
      rep.diameters.push_back(b.radius());
      break;
    }
    ++rep.sets;
  }
  return rep;
}

// Random subsets of size `size` (default: the threshold) must have A^3 = G.
inline CampaignReport np_campaign(const Universe& u, int sets, std::uint64_t seed,
                                  std::size_t size = 0) {
  CampaignReport rep;
  if (size == 0)
    size = static_cast<std::size_t>(np_threshold(u.spec, u.F->q()));
  for (int i = 0; i < sets; ++i) {
    auto rng = stream(seed, std::uint64_t(i));
    auto r = np_check(random_subset(u, size, rng));
    if (r.checked)
      ++rep.np_checked;
    else
      ++rep.np_skipped;
    ++rep.sets;
  }
  return rep;
}

}  // namespace chev
