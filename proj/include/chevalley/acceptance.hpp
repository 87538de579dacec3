#pragma once

// The acceptance suite, shared by the acceptance binary and `verify`.

#include <chrono>
#include <functional>
#include <set>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "classify.hpp"
#include "constants.hpp"
#include "degrees.hpp"
#include "escape.hpp"
#include "growth.hpp"
#include "report.hpp"
#include "torus_lab.hpp"

namespace chev {

struct AcceptanceConfig {
  std::uint64_t seed = 0x5eed2026;
  unsigned threads = 1;
  std::size_t cap = 10'000'000;
  BallOptions ball() const { return BallOptions{cap, threads}; }
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  Json report;
  double seconds = 0;  // wall time, kept out of the report
};

// Groups materialized once per run.
class AcceptanceContext {
 public:
  explicit AcceptanceContext(AcceptanceConfig cfg) : cfg_(cfg) {}
  const AcceptanceConfig& config() const { return cfg_; }

  const Universe& group(Family f, int n, std::uint64_t q) {
    auto key = family_name(f) + ":" + std::to_string(n) + ":" + std::to_string(q);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, materialize(make_field_q(q), group_params(f, n), cfg_.ball())).first;
    return it->second;
  }

 private:
  AcceptanceConfig cfg_;
  std::map<std::string, Universe> cache_;
};

namespace accept {

inline std::string plural(std::size_t n, const std::string& what) {
  return std::to_string(n) + " " + what;
}

// 1. group_order against BFS closure.
inline CriterionResult orders(AcceptanceContext& ctx) {
  CriterionResult res{1, "order oracle", true, "", Json::object(), 0};
  struct Row {
    Family f;
    int n;
    std::uint64_t q;
    long expected;
  };
  std::vector<Row> rows = {{Family::SL, 2, 3, 24},
                           {Family::SL, 2, 5, 120},
                           {Family::SL, 2, 7, 336},
                           {Family::SL, 3, 5, 372000},
                           {Family::Sp, 2, 3, 51840}};
  Json list = Json::array();
  for (const auto& r : rows) {
    auto g = group_params(r.f, r.n);
    BigInt formula = group_order(g, r.q);
    std::size_t enumerated = 0;
    std::string err;
    try {
      enumerated = ctx.group(r.f, r.n, r.q).order();
    } catch (const Error& e) {
      err = e.what();
    }
    bool ok = err.empty() && formula == r.expected && BigInt(enumerated) == formula;
    res.pass &= ok;
    list.push_back(Json{{"group", g.name()}, {"q", r.q}, {"formula", j_big(formula)},
                        {"enumerated", enumerated}, {"expected", r.expected}, {"pass", ok},
                        {"error", err.empty() ? Json(nullptr) : Json(err)}});
  }
  res.report["groups"] = list;
  res.summary = "5 groups, formula = closure = expected: " + std::string(res.pass ? "yes" : "no");
  return res;
}

// 2. Path counts by enumeration and by the determinant; degree vs table.
inline CriterionResult degrees_oracle(AcceptanceContext&) {
  CriterionResult res{2, "degree oracle", true, "", Json::object(), 0};
  Json paths = Json::array();
  std::map<int, long> small = {{2, 1}, {3, 2}, {4, 5}};
  for (int k = 2; k <= 10; ++k) {
    auto e = path_count(k, PathMethod::enumerate);
    auto d = path_count(k, PathMethod::determinant);
    bool ok = e.exact == d.exact && e.exact <= e.product_bound;
    if (small.count(k))
      ok &= e.exact == small[k];
    res.pass &= ok;
    paths.push_back(Json{{"k", k}, {"enumerated", j_big(e.exact)}, {"determinant", j_big(d.exact)},
                         {"pass", ok}});
  }
  Json degs = Json::array();
  std::size_t groups = 0;
  for (Family f : {Family::SL, Family::SOeven, Family::SOodd, Family::Sp})
    for (int n = 1; n <= 12; ++n) {
      GroupSpec g;
      try {
        g = group_params(f, n);
      } catch (const Error&) {
        continue;
      }
      if (g.N > 12)
        continue;
      BigInt exact = exact_group_degree(g);
      bool ok = ls_compare(LogScaled::from_int(exact), table_degree_bound(g)) != Cmp::Greater;
      res.pass &= ok;
      ++groups;
      degs.push_back(Json{{"group", g.name()}, {"exact", j_big(exact)},
                          {"table_bound", j_ls(table_degree_bound(g))}, {"pass", ok}});
    }
  res.report["paths"] = paths;
  res.report["degrees"] = degs;
  res.summary = "P(k) agrees for k = 2..10; " + plural(groups, "groups") + " with N <= 12 within the table bound";
  return res;
}

// 3. Orbit-stabilizer, non-rs counts, disc vs gcd.
inline CriterionResult classification(AcceptanceContext& ctx) {
  CriterionResult res{3, "classification oracle", true, "", Json::object(), 0};
  const auto& cfg = ctx.config();
  struct G {
    Family f;
    int n;
    std::uint64_t q;
  };
  std::vector<G> groups = {{Family::SL, 2, 3}, {Family::SL, 2, 5}, {Family::SL, 2, 7},
                           {Family::SL, 3, 5}, {Family::Sp, 2, 3}};
  Json list = Json::array();
  std::size_t samples = 0, disagreements = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& u = ctx.group(groups[gi].f, groups[gi].n, groups[gi].q);
    auto rng = stream(cfg.seed, 300 + gi);
    std::size_t ok_samples = 0;
    for (int i = 0; i < 100; ++i) {
      const Mat& g = u.elems[uniform_index(rng, u.order())];
      if (orbit_stabilizer(u, g).holds())
        ++ok_samples;
    }
    samples += 100;
    auto nonrs = count_nonrs_in_group(u);
    disagreements += nonrs.disc_gcd_disagreements;
    bool ok = ok_samples == 100 && nonrs.disc_gcd_disagreements == 0;
    Json e{{"group", u.spec.name()}, {"q", groups[gi].q}, {"orbit_stabilizer_ok", ok_samples},
           {"nonrs_count", nonrs.count}, {"disc_gcd_disagreements", nonrs.disc_gcd_disagreements}};
    if (u.spec.family == Family::SL && u.spec.N == 2 && (groups[gi].q == 5 || groups[gi].q == 7)) {
      std::size_t want = 2 * groups[gi].q * groups[gi].q;
      e["nonrs_expected"] = want;
      ok &= nonrs.count == want;
    }
    e["pass"] = ok;
    res.pass &= ok;
    list.push_back(e);
  }
  res.report["groups"] = list;
  res.summary = plural(samples, "orbit-stabilizer samples") + ", non-rs = 2q^2 for q = 5, 7, " +
                plural(disagreements, "disc/gcd disagreements");
  return res;
}

// 4. Ruzsa, Olson, and A^3 = G above the threshold.
inline CriterionResult growth_suite(AcceptanceContext& ctx) {
  CriterionResult res{4, "growth property suite", true, "", Json::object(), 0};
  const auto& cfg = ctx.config();
  Json camp = Json::array();
  std::size_t ruzsa = 0, olson = 0, sets = 0;
  int idx = 0;
  for (auto [f, n, q] : {std::tuple{Family::SL, 2, 7}, {Family::Sp, 2, 3}}) {
    const auto& u = ctx.group(f, n, q);
    auto rep = ruzsa_olson_campaign(u, 200, 2, cfg.seed + 400 + idx++, cfg.ball());
    bool ok = rep.sets == 200 && rep.ruzsa_violations == 0 && rep.olson_violations == 0;
    res.pass &= ok;
    ruzsa += rep.ruzsa_violations;
    olson += rep.olson_violations;
    sets += rep.sets;
    std::map<int, std::size_t> diam;
    for (int d : rep.diameters)
      ++diam[d];
    Json dj = Json::object();
    for (auto [d, c] : diam)
      dj[std::to_string(d)] = c;
    camp.push_back(Json{{"group", u.spec.name()}, {"q", q}, {"sets", rep.sets},
                        {"resampled", rep.resampled}, {"ruzsa_checks", rep.ruzsa_checks},
                        {"ruzsa_violations", rep.ruzsa_violations}, {"olson_checks", rep.olson_checks},
                        {"olson_violations", rep.olson_violations}, {"diameters", dj}, {"pass", ok}});
  }
  const auto& u11 = ctx.group(Family::SL, 2, 11);
  BigInt thr = np_threshold(u11.spec, 11);
  std::string np_err;
  CampaignReport np;
  try {
    np = np_campaign(u11, 50, cfg.seed + 450);
  } catch (const Error& e) {
    np_err = e.what();
  }
  bool np_ok = np_err.empty() && np.np_checked == 50;
  res.pass &= np_ok;
  res.report["ruzsa_olson"] = camp;
  res.report["product_theorem"] = Json{{"group", u11.spec.name()}, {"q", 11}, {"threshold", j_big(thr)},
                                       {"sets", np.sets}, {"checked", np.np_checked},
                                       {"error", np_err.empty() ? Json(nullptr) : Json(np_err)},
                                       {"pass", np_ok}};
  res.summary = plural(sets, "sets") + ", " + plural(ruzsa, "Ruzsa violations") + ", " +
                plural(olson, "Olson violations") + "; A^3 = G for " + std::to_string(np.np_checked) +
                "/50 sets of size " + thr.str() + " in SL_2(F_11)";
  return res;
}

// 5. Escape envelopes.
inline CriterionResult escape_suite(AcceptanceContext& ctx) {
  CriterionResult res{5, "escape envelope", true, "", Json::object(), 0};
  const auto& cfg = ctx.config();
  Json list = Json::array();
  std::size_t total = 0;
  auto hist = [](const std::map<int, std::size_t>& h) {
    Json j = Json::object();
    for (auto [k, c] : h)
      j[std::to_string(k)] = c;
    return j;
  };
  for (std::uint64_t q : {7, 11}) {
    auto F = make_field_q(q);
    auto g = group_params(Family::SL, 2);
    std::size_t done = 0, skipped = 0, bound_fail = 0, shitov_done = 0, shitov_fail = 0,
                shitov_skipped = 0;
    std::map<int, std::size_t> k_hist, shitov_hist;
    for (std::uint64_t i = 0; done < 100; ++i) {
      if (i > 10000)
        break;
      auto rng = stream(cfg.seed + 500 + q, i);
      auto gens = random_symmetric_set(*F, g, 1 + int(uniform_index(rng, 2)), rng);
      int D = 1 + int(uniform_index(rng, 3));
      Poly P = random_poly(*F, 4, D, rng);
      Mat x = random_group_element(*F, g, rng);
      Action a = uniform_index(rng, 2) ? Action::conj : Action::left;
      // shift so that the start point lies on the variety
      auto on = [&](const Mat& pt) {
        Poly s = P;
        poly_add_term(*F, s, std::vector<int>(4, 0), F->neg(evaluate(*F, P, pt.a)));
        return make_variety(4, {s}, 3, D);
      };
      EscapeInstance inst{F, gens, on(x), x, a};
      if (orbit_contained(inst, cfg.ball())) {
        ++skipped;
        continue;
      }
      auto c = escape_point(inst, cfg.ball());
      ++done;
      ++k_hist[c.k_found];
      if (!c.bound_holds || !c.orbit_verified)
        ++bound_fail;
      try {
        auto s = shitov_escape(F, gens, on(identity(2)), false, cfg.ball());
        ++shitov_done;
        ++shitov_hist[s.cert.k_found];
        if (!s.below_bound)
          ++shitov_fail;
      } catch (const Error& e) {
        if (e.kind() != Err::NoEscapeWithinBall)
          throw;
        ++shitov_skipped;
      }
    }
    bool ok = done == 100 && bound_fail == 0 && shitov_fail == 0;
    res.pass &= ok;
    total += done;
    list.push_back(Json{{"group", "SL_2"}, {"q", q}, {"instances", done}, {"orbit_contained_skipped", skipped},
                        {"escape_bound_failures", bound_fail}, {"k_histogram", hist(k_hist)},
                        {"shitov_instances", shitov_done}, {"shitov_failures", shitov_fail},
                        {"shitov_group_inside_variety", shitov_skipped}, {"shitov_k_histogram", hist(shitov_hist)},
                        {"pass", ok}});
  }
  res.report["groups"] = list;
  res.summary = plural(total, "verified escapes") + " in SL_2(F_7) and SL_2(F_11), all within both bounds: " +
                (res.pass ? "yes" : "no");
  return res;
}

// 6. Torus rank certificates.
inline CriterionResult torus_suite(AcceptanceContext& ctx) {
  CriterionResult res{6, "torus rank certificates", true, "", Json::object(), 0};
  const auto& cfg = ctx.config();
  struct Case {
    Family f;
    int n;
    std::uint64_t q;
    std::vector<long long> eta;
  };
  // smallest primes with char not dividing 2N, and with char > N
  std::vector<Case> cases = {
      {Family::Sp, 2, 3, {0, 1}},          {Family::Sp, 2, 3, {1, -1}},
      {Family::Sp, 2, 5, {0, 1}},          {Family::Sp, 2, 5, {1, -1}},
      {Family::Sp, 2, 5, {2, 1}},          {Family::Sp, 2, 7, {0, 1}},
      {Family::SOodd, 3, 3, {0, 0, 1}},    {Family::SOodd, 3, 11, {0, 0, 1}},
      {Family::SOodd, 3, 11, {1, 0, 1}},   {Family::SOodd, 3, 11, {1, 2, 3}},
      {Family::SOeven, 4, 3, {0, 0, 0, 1}}, {Family::SOeven, 4, 11, {0, 0, 0, 1}},
      {Family::SOeven, 4, 11, {1, 0, 0, 1}}, {Family::SOeven, 4, 11, {1, 2, 3, 4}},
  };
  Json list = Json::array();
  std::map<std::string, std::set<std::vector<long long>>> etas;
  std::set<std::string> constructions;
  int idx = 0;
  for (const auto& c : cases) {
    auto F = make_field_q(c.q);
    TorusSpec t{group_params(c.f, c.n), c.eta};
    Json e{{"group", t.spec.name()}, {"q", c.q}, {"eta", c.eta}};
    bool ok = false;
    try {
      auto cert = rank_certificate(F, t, CertMode::lie, cfg.seed + 600 + idx);
      std::size_t recount = recount_rank(*F, cert);
      ok = cert.achieved_rank == cert.expected_rank && recount == cert.expected_rank;
      e["expected_rank"] = cert.expected_rank;
      e["achieved_rank"] = cert.achieved_rank;
      e["recount"] = recount;
      e["construction"] = cert.construction;
      e["draws"] = cert.draws;
      constructions.insert(cert.construction);
      if (ok)
        etas[t.spec.name()].insert(cert.eta);
    } catch (const Error& err) {
      e["error"] = err.what();
    }
    ++idx;
    e["pass"] = ok;
    res.pass &= ok;
    list.push_back(e);
  }
  for (const char* name : {"Sp_4", "SO_7", "SO_8"})
    res.pass &= etas[name].size() >= 3;
  res.pass &= constructions.count("sp:eta_n+sum!=0") && constructions.count("sp:eta_n-sum!=0");
  res.report["certificates"] = list;
  res.report["constructions"] = constructions;
  res.summary = plural(cases.size(), "certificates") + " over Sp_4, SO_7, SO_8 with both Sp splits; distinct eta: " +
                std::to_string(etas["Sp_4"].size()) + ", " + std::to_string(etas["SO_7"].size()) + ", " +
                std::to_string(etas["SO_8"].size());
  return res;
}

// 7. Constants.
inline CriterionResult constants_suite(AcceptanceContext&) {
  CriterionResult res{7, "constants suite", true, "", Json::object(), 0};
  auto proof = proof_inequality_suite(64);
  auto app = appendix_suite(4);
  std::size_t compared = 0, disagree = 0;
  auto chk = [&](const LogScaled& v) {
    ++compared;
    if (!v.exact || !v.agrees())
      ++disagree;
  };
  for (int r = 1; r <= 2; ++r)
    for (long long t : {1LL, 7LL, 1000LL}) {
      auto c = clg_constants(r, t);
      chk(c.C1);
      chk(c.C2);
      if (r >= 2) {
        auto tc = torus_constants(r, t);
        chk(tc.C1);
        chk(tc.C2);
        chk(tc.C1_full);
      }
      for (const auto& p : growth_pairs(r, t))
        chk(p.m);
      chk(diameter_exponent(r).q_threshold);
    }
  res.pass = proof.ok() && app.ok() && disagree == 0;
  res.report["proof_inequalities"] = j_checks(proof, true);
  res.report["appendix"] = j_checks(app, true);
  res.report["exact_vs_log"] = Json{{"compared", compared}, {"disagreements", disagree}};
  res.summary = plural(proof.checks.size(), "proof inequalities") + " (r <= 64), " +
                plural(app.checks.size(), "appendix checks") + " (r <= 4), " +
                std::to_string(compared - disagree) + "/" + std::to_string(compared) +
                " exact/log agreements";
  return res;
}

// 8. Saturation counts in SL_2(F_5).
inline CriterionResult saturation_counts(AcceptanceContext& ctx) {
  CriterionResult res{8, "saturation counting", true, "", Json::object(), 0};
  const auto& cfg = ctx.config();
  const auto& u = ctx.group(Family::SL, 2, 5);
  auto A = make_genset(u.F, u.spec, u.gens);
  int d = diameter(A, cfg.ball());
  Mat g(2);
  g(0, 0) = 2;
  g(1, 1) = 3;
  auto cls = intersect_count(A, d, Target{TargetKind::class_of, g, {}}, cfg.ball());
  auto tor = intersect_count(A, d, Target{TargetKind::torus, {}, {}}, cfg.ball());
  auto os = orbit_stabilizer(u, g);
  Real lnG = real_ln(static_cast<long long>(u.order()));
  Real want_cls = real_ln(static_cast<long long>(os.class_size)) / lnG;
  Real want_tor = real_ln(static_cast<long long>(torus_point_count(*u.F, u.spec).canonical_count)) / lnG;
  res.pass = cls.saturated && cls.count == 30 && tor.count == 4 && os.class_size == 30 &&
             cls.measured_exponent && *cls.measured_exponent == want_cls && tor.measured_exponent &&
             *tor.measured_exponent == want_tor;
  res.report["diameter"] = d;
  res.report["class"] = to_json(cls);
  res.report["torus"] = to_json(tor);
  res.report["class_size_orbit_stabilizer"] = os.class_size;
  res.summary = "counts " + std::to_string(cls.count) + " and " + std::to_string(tor.count) + " at t = " +
                std::to_string(d) + ", exponents " +
                (cls.measured_exponent ? fmt12(*cls.measured_exponent) : "-") + " and " +
                (tor.measured_exponent ? fmt12(*tor.measured_exponent) : "-");
  return res;
}

using CriterionFn = std::function<CriterionResult(AcceptanceContext&)>;

inline std::vector<CriterionFn> criteria_1_to_8() {
  return {orders, degrees_oracle, classification, growth_suite,
          escape_suite, torus_suite, constants_suite, saturation_counts};
}

inline CriterionResult run_timed(const CriterionFn& f, AcceptanceContext& ctx, int id) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = f(ctx);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.summary = std::string("error: ") + e.what();
    r.report = Json{{"error", e.what()}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// 9. Re-runs 1..8 with one worker and with eight, and compares the dumps.
inline CriterionResult determinism(const std::vector<CriterionResult>& first, AcceptanceConfig cfg) {
  CriterionResult res{9, "determinism", true, "", Json::object(), 0};
  auto fns = criteria_1_to_8();
  Json runs = Json::array();
  for (unsigned threads : {1u, 8u}) {
    AcceptanceConfig c = cfg;
    c.threads = threads;
    AcceptanceContext ctx(c);
    std::size_t same = 0;
    Json diffs = Json::array();
    for (std::size_t i = 0; i < fns.size(); ++i) {
      auto r = run_timed(fns[i], ctx, int(i) + 1);
      if (r.report.dump() == first[i].report.dump() && r.pass == first[i].pass)
        ++same;
      else
        diffs.push_back(int(i) + 1);
    }
    res.pass &= diffs.empty();
    runs.push_back(Json{{"threads", threads}, {"identical", same}, {"differing", diffs}});
  }
  res.report["reruns"] = runs;
  res.summary = "sub-reports 1-8 byte-identical across a second run and across 1 vs 8 workers: " +
                std::string(res.pass ? "yes" : "no");
  return res;
}

struct AcceptanceRun {
  std::vector<CriterionResult> results;
  bool pass() const {
    for (const auto& r : results)
      if (!r.pass)
        return false;
    return true;
  }
  Json report(const AcceptanceConfig& cfg) const {
    Json j;
    j["seed"] = cfg.seed;
    j["caps"] = j_caps(cfg.ball());
    Json crit = Json::object();
    for (const auto& r : results)
      crit[std::to_string(r.id)] =
          Json{{"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"report", r.report}};
    j["criteria"] = crit;
    j["pass"] = pass();
    return j;
  }
};

inline std::string result_line(const CriterionResult& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", r.seconds);
  return "criterion " + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " [" + r.name +
         "] " + r.summary + " (" + buf + ")";
}

// Runs every criterion; `on_result` sees each one as it finishes.
inline AcceptanceRun run_acceptance(const AcceptanceConfig& cfg,
                                    const std::function<void(const CriterionResult&)>& on_result = {}) {
  AcceptanceRun run;
  AcceptanceContext ctx(cfg);
  auto fns = criteria_1_to_8();
  for (std::size_t i = 0; i < fns.size(); ++i) {
    run.results.push_back(run_timed(fns[i], ctx, int(i) + 1));
    if (on_result)
      on_result(run.results.back());
  }
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult d;
  try {
    d = determinism(run.results, cfg);
  } catch (const std::exception& e) {
    d = CriterionResult{9, "determinism", false, std::string("error: ") + e.what(), Json::object(), 0};
  }
  d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  run.results.push_back(d);
  if (on_result)
    on_result(d);
  return run;
}

}  // namespace accept
}  // namespace chev
