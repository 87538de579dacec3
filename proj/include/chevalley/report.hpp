#pragma once

// JSON emission. Object keys are sorted (std::map), exact integers are JSON
// integers when they fit in 64 bits and decimal strings otherwise, and reals
// are 12-significant-digit strings, so dumps are byte-stable.

#include <json.hpp>

#include <string>
#include <vector>

#include "constants.hpp"
#include "escape.hpp"
#include "growth.hpp"
#include "torus_lab.hpp"

namespace chev {

using Json = nlohmann::json;

inline Json j_big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Json j_rat(const Rational& v) { return Json(to_string(v)); }
inline Json j_real(const Real& v) { return Json(fmt12(v)); }

inline Json j_ls(const LogScaled& v) {
  Json j;
  j["ln"] = v.ln_str();
  j["exact"] = v.exact ? Json(v.exact_str()) : Json(nullptr);
  return j;
}

inline Json j_tower(const Tower& t) { return Json(t.str()); }

inline Json j_mat(const Field& F, const Mat& m) { return Json(format_mat(F, m)); }

inline Json j_mats(const Field& F, const std::vector<Mat>& ms) {
  Json a = Json::array();
  for (const auto& m : ms)
    a.push_back(format_mat(F, m));
  return a;
}

inline Json j_group(const GroupSpec& g) {
  Json j;
  j["family"] = family_name(g.family);
  j["n"] = g.n;
  j["name"] = g.name();
  j["rank"] = g.r;
  j["N"] = g.N;
  j["dim"] = g.dim;
  j["ell"] = g.ell;
  return j;
}

inline Json j_caps(const BallOptions& opt) {
  Json j;
  j["ball_cap"] = opt.cap;
  return j;
}

inline Json j_checks(const InequalityReport& rep, bool only_failures = false) {
  Json j;
  j["count"] = rep.checks.size();
  j["failures"] = rep.failures();
  Json list = Json::array();
  for (const auto& c : rep.checks) {
    if (only_failures && c.pass)
      continue;
    Json e;
    e["name"] = c.name;
    e["r"] = c.r;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["outcome"] = cmp_name(c.outcome);
    e["pass"] = c.pass;
    list.push_back(e);
  }
  j[only_failures ? "failed" : "checks"] = list;
  return j;
}

inline Json to_json(const ClgConstants& c) { return Json{{"C1", j_ls(c.C1)}, {"C2", j_ls(c.C2)}}; }

inline Json to_json(const TorusConstants& c) {
  return Json{{"C1", j_ls(c.C1)}, {"C2", j_ls(c.C2)}, {"C1_full", j_ls(c.C1_full)}};
}

inline Json to_json(const std::vector<GrowthPair>& ps) {
  Json a = Json::array();
  for (const auto& p : ps)
    a.push_back(Json{{"m", j_ls(p.m)}, {"eps", j_rat(p.eps)}});
  return a;
}

inline Json to_json(const DiameterExponent& d) {
  return Json{{"exponent", j_real(d.exponent)}, {"q_threshold", j_ls(d.q_threshold)}};
}

inline Json to_json(const AsymptoticReport& a) {
  return Json{{"r", a.r},
              {"eta", j_real(a.eta)},
              {"kappa", j_real(a.kappa)},
              {"c_pair1", j_real(a.c_pair1)},
              {"c_pair2", j_real(a.c_pair2)},
              {"c_r", j_real(a.c_r)},
              {"pair2_limit", j_real(a.pair2_limit)},
              {"limit", a.limit}};
}

inline Json to_json(const AppendixReport& a) {
  return Json{{"r", a.r},
              {"d", a.d},
              {"N", a.N},
              {"dimG", a.dimG},
              {"D", j_big(a.D)},
              {"t", j_big(a.t)},
              {"e_d", j_big(a.e_d)},
              {"k", j_big(a.k)},
              {"C1", j_tower(a.C1)},
              {"C2", j_big(a.C2)},
              {"thm_C1", j_tower(a.thm_C1)},
              {"thm_C2", j_big(a.thm_C2)},
              {"pair_deg", j_big(a.pair_deg)},
              {"fibre_deg", j_big(a.fibre_deg)},
              {"checks", j_checks(a.checks)}};
}

inline Json to_json(const BallSeries& s) {
  Json j;
  j["sizes"] = s.sizes;
  j["saturated_at"] = s.saturated_at ? Json(*s.saturated_at) : Json(nullptr);
  j["closed_at"] = s.closed_at ? Json(*s.closed_at) : Json(nullptr);
  j["generating"] = s.generating();
  j["group_order"] = j_big(s.group_order);
  return j;
}

inline Json to_json(const IntersectReport& r) {
  Json j;
  j["target"] = target_kind_name(r.kind);
  j["t"] = r.t;
  j["ball_size"] = r.ball_size;
  j["count"] = r.count;
  j["saturated"] = r.saturated;
  j["dim_V"] = r.dimV;
  j["dim_G"] = r.dimG;
  j["expected_exponent"] = j_rat(r.expected_exponent);
  j["measured_exponent"] = r.measured_exponent ? j_real(*r.measured_exponent) : Json(nullptr);
  j["target_size"] = r.target_size ? Json(*r.target_size) : Json(nullptr);
  j["bound_source"] = r.bound ? Json(r.bound_source) : Json(nullptr);
  j["bound"] = r.bound ? j_tower(*r.bound) : Json(nullptr);
  j["bound_holds"] = r.bound_holds;
  j["regular_semisimple_representative"] = r.rs_representative;
  return j;
}

inline Json to_json(const DichotomyReport& d) {
  Json pairs = Json::array();
  for (const auto& p : d.pairs)
    pairs.push_back(Json{{"m", j_ls(p.m)},
                         {"eps", j_rat(p.eps)},
                         {"grows", p.grows},
                         {"saturates", p.saturates},
                         {"branch", p.saturates ? "A^{3m}=G" : (p.grows ? "growth" : "none")}});
  return Json{{"l", d.l}, {"diameter", d.diameter}, {"ball_l", d.al},
              {"order", j_big(d.order)}, {"pairs", pairs}, {"ok", d.ok()}};
}

inline Json to_json(const Field& F, const IndependenceCertificate& c) {
  Json j;
  j["group"] = j_group(c.spec);
  j["q"] = c.q;
  j["eta"] = c.eta;
  j["mode"] = cert_mode_name(c.mode);
  j["seed"] = c.seed;
  j["witnesses"] = j_mats(F, c.witnesses);
  j["explicit_count"] = c.explicit_count;
  j["construction"] = c.construction;
  j["dim_t"] = c.dim_t;
  j["expected_rank"] = c.expected_rank;
  j["achieved_rank"] = c.achieved_rank;
  j["draws"] = c.draws;
  j["draws_per_slot"] = kDrawsPerSlot;
  j["hypothesis_flags"] = c.flags;
  return j;
}

inline Json to_json(const Field& F, const EscapeCertificate& c) {
  Json j;
  j["found"] = c.found;
  j["witness"] = c.found ? j_mat(F, c.witness) : Json(nullptr);
  j["k_found"] = c.k_found;
  j["bound"] = j_ls(c.bound);
  j["bound_holds"] = c.bound_holds;
  j["orbit_verified"] = c.orbit_verified;
  j["value"] = F.format(c.value);
  j["poly_index"] = c.poly_index;
  j["ball_size"] = c.ball_size;
  return j;
}

}  // namespace chev
