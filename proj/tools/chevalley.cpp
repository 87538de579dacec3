// chevalley: command-line front end. JSON on stdout, errors as JSON on stderr.
// Exit codes: 0 ok, 1 other error, 2 usage or malformed input, 3 cap exceeded,
// 4 hypothesis not met, 5 theorem or inequality violated.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chevalley/acceptance.hpp"
#include "chevalley/classify.hpp"
#include "chevalley/constants.hpp"
#include "chevalley/degrees.hpp"
#include "chevalley/escape.hpp"
#include "chevalley/growth.hpp"
#include "chevalley/report.hpp"
#include "chevalley/torus_lab.hpp"
#include "chevalley/varieties.hpp"

using namespace chev;

namespace {

int exit_code(Err e) {
  switch (e) {
    case Err::UsageError:
    case Err::ParseError:
    case Err::InadmissibleFamilyParameter:
    case Err::NonPrimeCharacteristic:
    case Err::ReducibleModulus:
    case Err::ShapeMismatch:
    case Err::ArityMismatch:
    case Err::BadEta:
    case Err::ZeroEta:
      return 2;
    case Err::BallCapExceeded:
    case Err::GroupTooLarge:
    case Err::TorusTooLarge:
    case Err::AmbientTooLarge:
    case Err::FieldTooLarge:
    case Err::KTooLarge:
      return 3;
    case Err::HypothesisFailed:
    case Err::NotGenerating:
    case Err::RankTooSmall:
    case Err::BadCharacteristic:
    case Err::NoEscapeWithinBall:
    case Err::FamilyNotSupported:
      return 4;
    case Err::TheoremViolation:
    case Err::InequalityFailed:
    case Err::RankDeficient:
      return 5;
    default:
      return 1;
  }
}

unsigned threads_from_env() {
  const char* v = std::getenv("CHEV_THREADS");
  if (!v || !*v)
    return 1;
  try {
    long n = std::stol(v);
    if (n < 1 || n > 256)
      fail(Err::UsageError, "CHEV_THREADS must be between 1 and 256");
    return static_cast<unsigned>(n);
  } catch (const std::logic_error&) {
    fail(Err::UsageError, std::string("CHEV_THREADS is not a number: ") + v);
  }
}

// Flags shared by the group-based subcommands.
struct GroupArgs {
  std::string group;
  int n = 0;
  std::uint64_t q = 0;
  std::string modulus;

  void add(CLI::App* app, bool need_q = true) {
    app->add_option("--group", group, "SL, Sp, SOeven, SOodd, or family:n:q[:modulus]")->required();
    app->add_option("--n", n, "family parameter: SL_n, Sp_2n, SO_2n, SO_2n+1");
    if (need_q)
      app->add_option("--q", q, "field size");
    app->add_option("--modulus", modulus, "defining polynomial c0:c1:...:1 for q = p^e");
  }

  GroupSpec spec() const {
    if (group.find(':') != std::string::npos)
      return parse_group_ref(group).spec;
    if (n < 1)
      fail(Err::UsageError, "--n is required");
    return group_params(parse_family(group), n);
  }

  FieldPtr field() const {
    if (group.find(':') != std::string::npos)
      return parse_group_ref(group).field;
    if (q == 0)
      fail(Err::UsageError, "--q is required");
    std::string ref = group + ":" + std::to_string(n) + ":" + std::to_string(q);
    if (!modulus.empty())
      ref += ":" + modulus;
    return parse_group_ref(ref).field;
  }

  Json json(const GroupSpec& g, const FieldPtr& F) const {
    Json j = j_group(g);
    if (F) {
      j["q"] = F->q();
      if (!F->is_prime_field())
        j["modulus"] = F->modulus_string();
    }
    return j;
  }
};

struct Common {
  std::uint64_t seed = 0;
  std::size_t cap = 10'000'000;
  std::size_t ambient_cap = 100'000'000;
  bool pretty = false;
  unsigned threads = 1;

  void add(CLI::App* app) {
    app->add_option("--seed", seed, "64-bit seed");
    app->add_option("--cap", cap, "ball size cap");
    app->add_flag("--pretty", pretty, "indent the JSON output");
  }
  BallOptions ball() const { return BallOptions{cap, threads}; }
  Json config(const std::string& cmd) const {
    return Json{{"command", cmd}, {"seed", seed},
                {"caps", Json{{"ball_cap", cap}, {"ambient_cap", ambient_cap}}}};
  }
};

void emit(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

// A LogScaled as a plain integer when it is one, otherwise the ln/exact pair.
Json j_value(const LogScaled& v) {
  if (v.exact && boost::multiprecision::denominator(*v.exact) == 1)
    return j_big(boost::multiprecision::numerator(*v.exact));
  return j_ls(v);
}

std::vector<long long> parse_csv_ints(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(std::stoll(part));
    } catch (const std::logic_error&) {
      fail(Err::ParseError, "bad integer '" + part + "' in '" + s + "'");
    }
  }
  return out;
}

// Generators from a file (symmetrized) or s random elements.
GenSet load_generators(const FieldPtr& F, const GroupSpec& g, const std::string& file, int random_s,
                       std::uint64_t seed, Json& info) {
  std::vector<Mat> raw;
  if (!file.empty()) {
    raw = load_matrix_list(*F, file, g.N);
    info["source"] = file;
  } else if (random_s > 0) {
    auto rng = stream(seed, 0);
    for (int i = 0; i < random_s; ++i)
      raw.push_back(random_group_element(*F, g, rng));
    info["source"] = "random";
    info["random_elements"] = random_s;
  } else {
    fail(Err::UsageError, "give --gens FILE or --random-gens s");
  }
  if (raw.empty())
    fail(Err::UsageError, "no generators");
  info["given"] = raw.size();
  GenSet A = make_genset(F, g, symmetrize(*F, raw));
  info["size"] = A.elems.size();
  info["symmetrized"] = true;
  return A;
}

Target parse_target(const Field& F, const GroupSpec& g, const std::string& s) {
  Target t;
  auto colon = s.find(':');
  std::string kind = s.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "class") {
    if (arg.empty())
      fail(Err::UsageError, "class target needs a matrix: class:a,b,c,d");
    t.kind = TargetKind::class_of;
    t.g = parse_mat(F, arg, g.N);
  } else if (kind == "torus") {
    t.kind = TargetKind::torus;
    if (!arg.empty())
      t.eta = parse_csv_ints(arg);
  } else if (kind == "torus_nonrs") {
    t.kind = TargetKind::torus_nonrs;
    if (!arg.empty())
      t.eta = parse_csv_ints(arg);
  } else if (kind == "nonrs") {
    t.kind = TargetKind::nonrs_locus;
  } else {
    fail(Err::UsageError, "target must be class:<matrix>, torus[:<eta>], torus_nonrs or nonrs");
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth, escape and torus experiments in finite classical groups"};
  app.require_subcommand(1);
  Common common;
  GroupArgs ga;

  // order
  auto* order = app.add_subcommand("order", "order of G(F_q) from the closed formula");
  ga.add(order);
  bool order_enumerate = false;
  order->add_flag("--enumerate", order_enumerate, "also count elements by BFS closure");
  common.add(order);

  // diameter
  auto* diam = app.add_subcommand("diameter", "diameter of the Cayley graph");
  std::string gens_file;
  int random_gens = 0;
  ga.add(diam);
  diam->add_option("--gens", gens_file, "generating-set file, one matrix per line");
  diam->add_option("--random-gens", random_gens, "number of random generators");
  common.add(diam);

  // growth
  auto* growth = app.add_subcommand("growth", "ball sizes, growth checks, intersection counts");
  int tmax = 10;
  std::string target_s, emit_fmt = "json";
  int dichotomy_l = 1;
  ga.add(growth);
  growth->add_option("--gens", gens_file, "generating-set file, one matrix per line");
  growth->add_option("--random-gens", random_gens, "number of random generators");
  growth->add_option("--tmax", tmax, "largest ball radius");
  growth->add_option("--target", target_s, "class:<matrix> | torus[:<eta>] | torus_nonrs | nonrs");
  growth->add_option("--emit", emit_fmt, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  growth->add_option("--l", dichotomy_l, "l for the growth dichotomy check");
  common.add(growth);

  // escape
  auto* esc = app.add_subcommand("escape", "escape from a subvariety");
  std::string variety_file, point_s, action_s = "left", route = "orbit";
  ga.add(esc);
  esc->add_option("--gens", gens_file, "generating-set file, one matrix per line");
  esc->add_option("--random-gens", random_gens, "number of random generators");
  esc->add_option("--variety", variety_file, "variety file");
  esc->add_option("--point", point_s, "start point (default: identity)");
  esc->add_option("--action", action_s, "left or conj")->check(CLI::IsMember({"left", "conj"}));
  esc->add_option("--route", route, "orbit, shitov, shitov-linearized or rs")
      ->check(CLI::IsMember({"orbit", "shitov", "shitov-linearized", "rs"}));
  common.add(esc);

  // classify
  auto* cls = app.add_subcommand("classify", "characteristic polynomials and regular semisimplicity");
  std::vector<std::string> matrices;
  bool cls_all = false, cls_records = false;
  ga.add(cls);
  cls->add_option("--matrix", matrices, "matrix to classify (repeatable)");
  cls->add_option("--gens", gens_file, "classify every matrix in the file");
  cls->add_flag("--all", cls_all, "enumerate the whole group (SL and Sp)");
  cls->add_flag("--records", cls_records, "with --all, emit one record per element");
  common.add(cls);

  // degree
  auto* deg = app.add_subcommand("degree", "exact degree of G and the table bound");
  ga.add(deg, false);
  common.add(deg);

  // constants
  auto* cst = app.add_subcommand("constants", "explicit constants and the inequality suites");
  int cr = 1, cd = 1;
  std::string ct = "1", cD = "1", which = "clg";
  cst->add_option("--r", cr, "rank")->required();
  cst->add_option("--t", ct, "t (or l for growth)");
  cst->add_option("--d", cd, "dimension d for --which appendix");
  cst->add_option("--D", cD, "degree D for --which appendix");
  cst->add_option("--which", which, "clg, torus, growth, diameter, appendix, asymptotic, suite")
      ->check(CLI::IsMember({"clg", "torus", "growth", "diameter", "appendix", "asymptotic", "suite"}));
  common.add(cst);

  // torus-cert
  auto* tc = app.add_subcommand("torus-cert", "linear independence certificate for a non-maximal torus");
  std::string eta_s, mode_s = "lie";
  ga.add(tc);
  tc->add_option("--eta", eta_s, "character exponents, comma separated")->required();
  tc->add_option("--mode", mode_s, "lie or adjoint")->check(CLI::IsMember({"lie", "adjoint"}));
  common.add(tc);

  // verify
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  std::string profile = "desk";
  ver->add_option("--profile", profile, "desk")->check(CLI::IsMember({"desk"}));
  common.add(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    common.threads = threads_from_env();
    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    Json out;
    out["config"] = common.config(name);

    if (name == "order") {
      auto g = ga.spec();
      auto F = ga.field();
      out["group"] = ga.json(g, F);
      out["order"] = j_big(group_order(g, F->q()));
      if (order_enumerate) {
        auto u = materialize(F, g, common.ball());
        out["enumerated"] = u.order();
      }
    } else if (name == "diameter") {
      auto g = ga.spec();
      auto F = ga.field();
      Json info;
      auto A = load_generators(F, g, gens_file, random_gens, common.seed, info);
      out["config"]["gens"] = info;
      out["group"] = ga.json(g, F);
      int d = diameter(A, common.ball());
      out["diameter"] = d;
      out["series"] = to_json(ball_series(A, d, common.ball()));
    } else if (name == "growth") {
      auto g = ga.spec();
      auto F = ga.field();
      Json info;
      auto A = load_generators(F, g, gens_file, random_gens, common.seed, info);
      out["config"]["gens"] = info;
      out["config"]["tmax"] = tmax;
      out["group"] = ga.json(g, F);
      auto series = ball_series(A, tmax, common.ball());
      std::optional<Target> target;
      if (!target_s.empty()) {
        target = parse_target(*F, g, target_s);
        out["config"]["target"] = target_s;
      }
      std::vector<IntersectReport> counts;
      if (target)
        for (int t = 1; t <= int(series.sizes.size()); ++t)
          counts.push_back(intersect_count(A, t, *target, common.ball()));
      if (emit_fmt == "csv") {
        std::cout << "t,ball_size,target_count\n";
        for (std::size_t i = 0; i < series.sizes.size(); ++i) {
          std::cout << (i + 1) << "," << series.sizes[i] << ",";
          if (target)
            std::cout << counts[i].count;
          std::cout << "\n";
        }
        return 0;
      }
      out["series"] = to_json(series);
      Json ruzsa = Json::array();
      Ball b(A.F, A.elems, common.ball());
      for (int k = 4; k <= 6; ++k) {
        auto r = ruzsa_from_ball(b, k);
        ruzsa.push_back(Json{{"k", k}, {"lhs", j_big(r.lhs)}, {"rhs", j_big(r.rhs)}, {"pass", r.pass}});
      }
      out["ruzsa"] = ruzsa;
      if (series.generating()) {
        auto o = olson_from_ball(b, series.group_order);
        out["olson"] = Json{{"A", o.a1}, {"A3", o.a3}, {"A3_is_G", o.a3_is_group},
                            {"doubled", o.doubled}, {"pass", o.pass()}};
        out["dichotomy"] = to_json(growth_dichotomy_check(A, dichotomy_l, common.ball()));
      } else {
        out["olson"] = nullptr;
        out["dichotomy"] = nullptr;
      }
      try {
        BigInt thr = np_threshold(g, F->q());
        auto np = np_check(A);
        out["product_theorem"] = Json{{"threshold", j_big(thr)}, {"size", np.size},
                                      {"checked", np.checked}, {"notice", np.notice}};
      } catch (const Error& e) {
        if (e.kind() != Err::HypothesisFailed)
          throw;
        out["product_theorem"] = Json{{"skipped", e.what()}};
      }
      if (target) {
        Json cj = Json::array();
        for (const auto& r : counts)
          cj.push_back(to_json(r));
        out["intersections"] = cj;
      }
    } else if (name == "escape") {
      auto g = ga.spec();
      auto F = ga.field();
      Json info;
      auto A = load_generators(F, g, gens_file, random_gens, common.seed, info);
      out["config"]["gens"] = info;
      out["config"]["route"] = route;
      out["group"] = ga.json(g, F);
      if (route == "rs") {
        auto c = find_regular_semisimple(F, g, A.elems, common.ball());
        out["certificate"] = to_json(*F, c);
      } else {
        if (variety_file.empty())
          fail(Err::UsageError, "--variety is required for this route");
        auto V = load_variety(*F, variety_file);
        out["config"]["variety"] = variety_file;
        out["variety"] = Json{{"ambient", V.ambient}, {"dim", V.dim}, {"deg", V.deg},
                              {"polys", V.polys.size()}};
        if (route == "orbit") {
          Mat x = point_s.empty() ? identity(g.N) : parse_mat(*F, point_s, g.N);
          out["config"]["action"] = action_s;
          out["point"] = j_mat(*F, x);
          EscapeInstance inst{F, A.elems, V, x, parse_action(action_s)};
          auto c = escape_point(inst, common.ball());
          auto eb = escape_bound(V.dim, V.deg);
          out["certificate"] = to_json(*F, c);
          out["escape_bound"] = Json{{"sum", j_ls(eb.sum)}, {"closed", j_ls(eb.closed)}};
        } else {
          auto s = shitov_escape(F, A.elems, V, route == "shitov-linearized", common.ball());
          out["certificate"] = to_json(*F, s.cert);
          out["shitov"] = Json{{"bound", j_ls(s.bound)}, {"N_prime", s.Nprime},
                               {"linear_envelope", j_real(s.linear_envelope)},
                               {"below_bound", s.below_bound}, {"within_envelope", s.within_envelope},
                               {"via_linearize", s.via_linearize}};
        }
      }
    } else if (name == "classify") {
      auto g = ga.spec();
      auto F = ga.field();
      out["group"] = ga.json(g, F);
      auto record = [&](const Mat& m) {
        auto cp = char_poly(*F, m);
        return Json{{"matrix", format_mat(*F, m)}, {"charpoly", format_upoly(*F, cp.coeffs)},
                    {"disc", F->format(cp.disc)}, {"regular_semisimple", cp.disc != 0}};
      };
      std::vector<Mat> ms;
      for (const auto& s : matrices)
        ms.push_back(parse_mat(*F, s, g.N));
      if (!gens_file.empty())
        for (auto& m : load_matrix_list(*F, gens_file, g.N))
          ms.push_back(std::move(m));
      Json recs = Json::array();
      for (const auto& m : ms) {
        if (!is_member(*F, g, m))
          fail(Err::HypothesisFailed, format_mat(*F, m) + " is not in " + g.name());
        recs.push_back(record(m));
      }
      if (cls_all) {
        auto u = materialize(F, g, common.ball());
        auto c = count_nonrs_in_group(u);
        out["group_summary"] = Json{{"order", c.order}, {"nonrs_count", c.count},
                                    {"nonrs_bound", j_ls(c.nonrs_bound)}, {"bound_holds", c.bound_holds},
                                    {"disc_gcd_disagreements", c.disc_gcd_disagreements}};
        if (cls_records)
          for (const auto& m : u.elems)
            recs.push_back(record(m));
      } else if (ms.empty()) {
        fail(Err::UsageError, "give --matrix, --gens or --all");
      }
      out["records"] = recs;
    } else if (name == "degree") {
      auto g = ga.spec();
      out["family"] = family_name(g.family);
      out["n"] = g.n;
      out["group"] = ga.json(g, nullptr);
      out["exact"] = j_big(exact_group_degree(g));
      out["table_bound"] = j_value(table_degree_bound(g));
      auto cl = cl_degree_bound(g);
      out["class_degree"] = Json{{"factorial_form", j_ls(cl.factorial_form)},
                                 {"closed_form", j_ls(cl.closed_form)},
                                 {"factorial_le_closed", cl.factorial_le_closed}};
    } else if (name == "constants") {
      BigInt t(ct);
      out["r"] = cr;
      out["t"] = j_big(t);
      out["which"] = which;
      auto small_t = [&]() -> long long {
        if (t < 1 || t > BigInt(std::numeric_limits<long long>::max()))
          fail(Err::UsageError, "--t must be a positive 64-bit integer here");
        return static_cast<long long>(t);
      };
      if (which == "clg") {
        out["constants"] = to_json(clg_constants(cr, small_t()));
      } else if (which == "torus") {
        out["constants"] = to_json(torus_constants(cr, small_t()));
      } else if (which == "growth") {
        out["pairs"] = to_json(growth_pairs(cr, small_t()));
      } else if (which == "diameter") {
        out["constants"] = to_json(diameter_exponent(cr));
      } else if (which == "asymptotic") {
        out["constants"] = to_json(asymptotic_constants(cr));
      } else if (which == "appendix") {
        auto a = appendix_constants(cr, cd, BigInt(cD), t);
        out["constants"] = to_json(a);
        a.checks.require_ok("appendix constants");
      } else {
        auto rep = proof_inequality_suite(cr);
        out["suite"] = j_checks(rep, true);
        emit(out, common.pretty);
        rep.require_ok("proof inequality suite");
        return 0;
      }
    } else if (name == "torus-cert") {
      auto g = ga.spec();
      auto F = ga.field();
      out["config"]["eta"] = eta_s;
      out["config"]["mode"] = mode_s;
      auto c = rank_certificate(F, TorusSpec{g, parse_csv_ints(eta_s)},
                                mode_s == "lie" ? CertMode::lie : CertMode::adjoint, common.seed);
      out["certificate"] = to_json(*F, c);
    } else if (name == "verify") {
      AcceptanceConfig cfg;
      if (sub->count("--seed"))
        cfg.seed = common.seed;
      cfg.cap = common.cap;
      cfg.threads = common.threads;
      auto run = accept::run_acceptance(cfg, [](const CriterionResult& r) {
        std::cerr << accept::result_line(r) << std::endl;
      });
      out = run.report(cfg);
      out["config"] = common.config(name);
      out["config"]["seed"] = cfg.seed;
      out["config"]["profile"] = profile;
      emit(out, common.pretty);
      return run.pass() ? 0 : 1;
    }
    emit(out, common.pretty);
    return 0;
  } catch (const Error& e) {
    std::cerr << Json{{"error", err_name(e.kind())}, {"message", e.what()}}.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
