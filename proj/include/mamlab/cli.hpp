#pragma once

// Command dispatch for the mamlab tool. run() parses the command line, reads
// the input file, runs one analysis and writes a JSON report.
//
// Exit codes: 0 all verdicts positive, 1 a check failed (the report carries
// the witness), 2 input or usage error, 3 interval precision exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mamlab/fan.hpp"
#include "mamlab/fixtures.hpp"
#include "mamlab/foliation.hpp"
#include "mamlab/io.hpp"
#include "mamlab/kahler.hpp"
#include "mamlab/scalar/relation.hpp"
#include "mamlab/structure.hpp"

namespace mamlab::cli {

using io::Json;

inline constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string command;
  std::string input;
  int precision = kDefaultMaxBits;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  int height = 1;
  double tol_eig = 1e-8;
  std::string out;
};

struct Outcome {
  Json report;
  int code = 0;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {
      "validate-fan", "complete", "normal-fan", "weak-normal", "quadrics", "psi-check", "psi-sample", "genericity",
      "leaves",       "seifert",  "coordinate-subs", "kahler-audit", "torus-periods", "hopf", "fixtures"};
  return c;
}

namespace detail {

inline const PsiMap& need_psi(const Problem& p, const std::string& cmd) {
  if (!p.psi) throw InputError(cmd + " needs a 'psi' section");
  return *p.psi;
}

inline Json certificate_json(const WeakNormalCertificate& c, const SymbolTable& t) {
  Json u = Json::array(), beta = Json::array(), forced = Json::array();
  for (const auto& v : c.u) u.push_back(io::scalars(v, t));
  for (const auto& v : c.beta) beta.push_back(io::scalars(v, t));
  for (const auto& [face, i] : c.forced_zeros) forced.push_back(Json{{"face", io::face(face)}, {"i", i}});
  return Json{{"b", io::scalars(c.b, t)}, {"faces", io::faces(c.faces)}, {"u", std::move(u)}, {"beta", std::move(beta)},
              {"scale", c.scale.get_str()}, {"strict", c.strict}, {"forced_zeros", std::move(forced)}};
}

/// Certificate from the input offsets when they give one, else from the LP.
inline WeakNormalResult certificate(const Problem& p, const Options& o, std::string& source) {
  if (p.offsets)
    if (auto c = certificate_from_offsets(p.fan, *p.offsets, o.precision)) {
      source = "offsets";
      return *c;
    }
  source = "lp";
  return weak_normal_certificate(p.fan, o.precision);
}

inline const WeakNormalCertificate& need_certificate(const WeakNormalResult& r) {
  if (const auto* c = std::get_if<WeakNormalCertificate>(&r)) return *c;
  throw DomainError("the fan is not weakly normal: " + std::get<WeakNormalFailure>(r).reason);
}

inline std::string quadric_text(const QuadricSystem& q, std::size_t row, const SymbolTable& t) {
  std::string s;
  for (std::size_t k = 0; k < q.gamma.cols(); ++k) {
    const Scalar& g = q.gamma(row, k);
    if (g.is_zero()) continue;
    const std::string term = "|z" + std::to_string(k + 1) + "|^2";
    std::string coef = g == Scalar(1) ? "" : g == Scalar(-1) ? "-" : "(" + io::scalar_text(g, t) + ")*";
    s += (s.empty() ? "" : " + ") + coef + term;
  }
  return (s.empty() ? "0" : s) + " = " + io::scalar_text(q.rhs[row], t);
}

inline Json subspace_json(const SubspaceSearchReport& r) {
  const char* status = r.status == SubspaceSearchReport::Status::Verified         ? "verified"
                       : r.status == SubspaceSearchReport::Status::Counterexample ? "counterexample"
                                                                            : "skipped";
  Json j{{"status", status},
         {"height", r.height},
         {"explicit_candidates", r.explicit_candidates},
         {"candidates", r.candidates},
         {"g1_holds", r.g1_holds},
         {"parity_excludes", r.parity_excludes},
         {"invariant_q", r.invariant_q},
         {"scope", r.scope}};
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    Json w = Json::array();
    for (const auto& v : c.w) w.push_back(io::rationals(v));
    j["counterexample"] = Json{{"w", std::move(w)},
                               {"dim_l", c.dim_l},
                               {"proper", c.proper},
                               {"meets_conjugate", c.meets_conjugate},
                               {"imaginary_rational", c.imaginary_rational},
                               {"q", c.q},
                               {"q_invariant", c.q_invariant}};
  }
  return j;
}

inline Json genericity_json(const GenericityResult& g, bool verified) {
  Json j{{"holds", g.holds}};
  if (g.witness) {
    j["witness"] = io::rationals(*g.witness);
    j["witness_verified"] = verified;
  }
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands. Each fills `r` and returns whether every verdict is positive.

namespace detail {

/// Advisory only: verdicts never depend on it.
inline Json relation_json(const RelationScan& scan) {
  Json rel = Json::array();
  for (const auto& r : scan.relations) rel.push_back(r.text);
  Json j{{"performed", scan.performed}, {"suspected_relations", std::move(rel)}};
  if (!scan.note.empty()) j["note"] = scan.note;
  return j;
}

}  // namespace detail

inline bool cmd_validate_fan(const Problem& p, const Options& o, Json& r) {
  const FanValidation v = validate_fan(p.fan, o.precision);
  const SignOracle oracle(p.fan.table, o.precision);
  Json overlaps = Json::array();
  for (const auto& ov : v.overlaps)
    overlaps.push_back(Json{{"first", io::face(ov.first)},
                            {"second", io::face(ov.second)},
                            {"mu", io::scalars(ov.mu, p.fan.table)},
                            {"nu", io::scalars(ov.nu, p.fan.table)},
                            {"verified", verify_overlap(p.fan, ov, oracle)}});
  r["valid"] = v.ok();
  r["dependent_faces"] = io::faces(v.dependent_faces);
  r["overlaps"] = std::move(overlaps);
  return v.ok();
}

inline bool cmd_complete(const Problem& p, const Options& o, Json& r) {
  const CompletenessReport c = is_complete(p.fan, o.precision);
  r["complete"] = c.complete;
  r["diagnostics"] = c.diagnostics;
  r["failing_ridge"] = c.failing_ridge ? io::face(*c.failing_ridge) : Json();
  return c.complete;
}

inline bool cmd_normal_fan(const Problem& p, const Options& o, Json& r) {
  if (!p.offsets) throw InputError("normal-fan needs an 'offsets' section");
  const PolytopeH poly{p.fan.n, p.fan.vectors, *p.offsets, p.fan.table};
  try {
    const NormalFan nf = normal_fan(poly, o.precision);
    Json vs = Json::array();
    for (const auto& v : nf.vertices)
      vs.push_back(Json{{"u", io::scalars(v.u, p.fan.table)}, {"facets", io::face(v.active)}});
    r["complex"] = io::complex_data(nf.fan.complex);
    r["vertices"] = std::move(vs);
    r["matches_input_complex"] = nf.fan.complex == p.fan.complex;
    return true;
  } catch (const PolytopeError& e) {
    r["reason"] = e.reason();
    r["message"] = e.what();
    return false;
  }
}

/// The LP runs even when the fan preconditions fail, so an infeasible
/// instance still yields its Farkas certificate.
inline bool cmd_weak_normal(const Problem& p, const Options& o, Json& r) {
  const bool valid = validate_fan(p.fan, o.precision).ok();
  const bool complete = valid && is_complete(p.fan, o.precision).complete;
  r["preconditions"] = Json{{"valid_fan", valid}, {"complete", complete}};
  std::string source;
  const WeakNormalResult res = detail::certificate(p, o, source);
  const SignOracle oracle(p.fan.table, o.precision);
  if (const auto* c = std::get_if<WeakNormalCertificate>(&res)) {
    r["weakly_normal"] = complete;
    r["source"] = source;
    r["certificate"] = detail::certificate_json(*c, p.fan.table);
    r["certificate_verified"] = verify_certificate(p.fan, *c, oracle);
    return complete;
  }
  const auto& f = std::get<WeakNormalFailure>(res);
  r["weakly_normal"] = false;
  r["reason"] = f.reason;
  r["farkas"] = io::scalars(f.farkas, p.fan.table);
  r["farkas_verified"] = verify_farkas(f.problem, f.farkas, oracle);
  return false;
}

inline bool cmd_quadrics(const Problem& p, const Options& o, Json& r) {
  ScalarVector b;
  if (p.offsets) {
    b = *p.offsets;
    r["offsets_source"] = "input";
  } else {
    std::string source;
    b = detail::need_certificate(detail::certificate(p, o, source)).b;
    r["offsets_source"] = "weak-normal certificate";
  }
  const QuadricSystem q = gamma_matrix(p.fan, b);
  const PolytopeH poly{p.fan.n, p.fan.vectors, b, p.fan.table};
  const SimplicialComplex kp = normal_fan(poly, o.precision).fan.complex;
  const auto pts = sample_zp(poly, o.seed, o.samples, o.precision);
  double worst = 0;
  for (const auto& z : pts) worst = std::max(worst, quadric_residual(q, z).cwiseAbs().maxCoeff());
  const NondegeneracyReport nd = nondegeneracy_check(q, kp, pts, o.tol_eig);
  Json rows = Json::array(), text = Json::array();
  for (std::size_t k = 0; k < q.gamma.rows(); ++k) {
    rows.push_back(io::scalars(q.gamma.row(k), p.fan.table));
    text.push_back(detail::quadric_text(q, k, p.fan.table));
  }
  Json points = Json::array();
  for (const auto& z : pts) points.push_back(io::point(z));
  const double tol_residual = 1e-10;
  r["gamma"] = std::move(rows);
  r["rhs"] = io::scalars(q.rhs, p.fan.table);
  r["quadrics"] = std::move(text);
  r["gamma_times_a_transpose_zero"] = true;
  r["k_p"] = io::complex_data(kp);
  r["k_p_equals_k"] = kp == p.fan.complex;
  r["samples"] = pts.size();
  r["seed"] = o.seed;
  r["max_residual"] = worst;
  r["tol_residual"] = tol_residual;
  r["all_in_u"] = nd.all_in_u;
  r["nondegenerate"] = Json{{"full_rank", nd.full_rank()},
                            {"expected_rank", nd.expected_rank},
                            {"min_rank", nd.min_rank},
                            {"min_singular_value", nd.min_singular},
                            {"worst_sample", nd.worst_sample},
                            {"tolerance", nd.tolerance}};
  r["points"] = std::move(points);
  return worst < tol_residual && nd.all_in_u && nd.full_rank();
}

inline Json psi_check_json(const PsiCheck& c) {
  return Json{{"ok", c.ok()},
              {"shape_ok", c.shape_ok},
              {"condition_a", c.condition_a},
              {"condition_b", c.condition_b},
              {"real_rank", c.real_rank},
              {"notes", c.notes}};
}

inline bool cmd_psi_check(const Problem& p, const Options&, Json& r) {
  const PsiCheck c = check_psi(p.fan, detail::need_psi(p, "psi-check"));
  r["check"] = psi_check_json(c);
  return c.ok();
}

inline bool cmd_psi_sample(const Problem& p, const Options& o, Json& r) {
  const PsiMap psi = sample_psi(p.fan, o.seed);
  const PsiCheck c = check_psi(p.fan, psi);
  r["seed"] = o.seed;
  r["psi"] = io::psi(psi, p.fan.table);
  r["check"] = psi_check_json(c);
  return c.ok();
}

inline bool cmd_genericity(const Problem& p, const Options& o, Json& r) {
  const GenericityResult g1 = genericity_g1(p.fan), g2 = genericity_g2(p.fan);
  r["g1"] = detail::genericity_json(g1, g1.witness && verify_g1_witness(p.fan, *g1.witness));
  r["g2"] = detail::genericity_json(g2, g2.witness && verify_g2_witness(p.fan, *g2.witness));
  bool subspace_ok = false;
  if (!p.fan.ell()) {
    r["subspace_check"] = Json{{"status", "skipped"}, {"scope", "m - n is odd or negative"}};
  } else {
    PsiMap psi;
    if (p.psi) {
      psi = *p.psi;
      r["psi_source"] = "input";
    } else {
      psi = sample_psi(p.fan, o.seed);
      r["psi_source"] = "sampled";
      r["psi"] = io::psi(psi, p.fan.table);
    }
    const SubspaceSearchReport lr = p.candidates.empty() ? psi_subspace_check(p.fan, psi, o.height)
                                                   : psi_subspace_check(p.fan, psi, p.candidates);
    r["subspace_check"] = detail::subspace_json(lr);
    subspace_ok = lr.status == SubspaceSearchReport::Status::Verified;
  }
  return g1.holds && g2.holds && subspace_ok;
}

inline bool cmd_leaves(const Problem& p, const Options&, Json& r) {
  Json recs = Json::array();
  for (const auto& l : all_leaves(p.fan))
    recs.push_back(Json{{"I", io::face(l.face)},
                        {"rank", l.rank},
                        {"g_leaf", Json{{"torus", l.torus}, {"affine", l.affine}}},
                        {"f_leaf", l.f_leaf},
                        {"compact", l.compact}});
  r["leaves"] = std::move(recs);
  r["seifert"] = detect_seifert(p.fan).rational;
  return true;
}

inline bool cmd_seifert(const Problem& p, const Options&, Json& r) {
  const SeifertReport s = detect_seifert(p.fan);
  Json basis = Json::array(), coords = Json::array();
  for (const auto& v : s.lattice_basis) basis.push_back(io::integers(v));
  for (const auto& v : s.coordinates) coords.push_back(io::integers(v));
  r["rational"] = s.rational;
  r["rank_gamma_empty_face"] = gamma_rank(p.fan, {});
  r["lattice_basis"] = std::move(basis);
  r["coordinates"] = std::move(coords);
  r["primitive"] = s.primitive;
  r["generators_primitive"] = s.generators_primitive;
  r["weights"] = s.weights ? io::integers(*s.weights) : Json();
  r["base"] = s.base;
  return s.rational;
}

inline bool cmd_coordinate_subs(const Problem& p, const Options& o, Json& r) {
  Json recs = Json::array();
  for (const auto& s : coordinate_submanifolds(p.fan, o.precision))
    recs.push_back(Json{{"J", io::face(s.j)},
                        {"k_j", io::faces(s.k_j.maximal_faces())},
                        {"nonempty", s.nonempty},
                        {"complex_dimension", s.complex_dimension ? Json(*s.complex_dimension) : Json()},
                        {"span_dimension", s.span_dimension},
                        {"valid_fan", s.valid_fan},
                        {"complete", s.complete}});
  r["submanifolds"] = std::move(recs);
  return true;
}

inline bool cmd_kahler_audit(const Problem& p, const Options& o, Json& r) {
  std::string source;
  const auto& res = detail::certificate(p, o, source);
  const BetaSystem b = beta_vectors(p.fan, detail::need_certificate(res), o.precision);
  KahlerAuditOptions ko;
  ko.seed = o.seed;
  ko.points = o.samples;
  ko.fd_pairs = 2 * o.samples;
  ko.tol_eig = o.tol_eig;
  const KahlerAudit a = kahler_audit(p.fan, b, ko);
  Json betas = Json::array();
  for (const auto& v : b.beta) betas.push_back(io::scalars(v, p.fan.table));
  r["certificate_source"] = source;
  r["faces"] = io::faces(b.faces);
  r["beta"] = std::move(betas);
  r["single_term"] = b.single_term;
  r["points"] = ko.points;
  r["fd_pairs"] = ko.fd_pairs;
  r["seed"] = ko.seed;
  r["kernel"] = Json{{"ok", a.kernel_ok()}, {"max_relative", a.kernel_max_relative}, {"tolerance", ko.tol_kernel}};
  r["off_kernel"] = Json{{"ok", a.positive_ok()},
                         {"min_value", a.off_kernel_min},
                         {"directions", a.off_kernel_samples},
                         {"min_projection", ko.min_projection}};
  r["hessian"] = Json{{"ok", a.hessian_ok()},
                      {"min_eigenvalue_relative", a.min_eigen_relative},
                      {"kernel_dimension_min", a.kernel_dim_min},
                      {"kernel_dimension_max", a.kernel_dim_max},
                      {"expected_kernel_dimension", a.m - a.n},
                      {"max_principal_angle", a.max_principal_angle},
                      {"tol_eig", ko.tol_eig},
                      {"tol_angle", ko.tol_angle}};
  r["consistency"] = Json{{"ok", a.consistency_ok()},
                          {"max_relative", a.consistency_max_relative},
                          {"tolerance", ko.tol_consistency}};
  r["finite_difference"] = Json{{"ok", a.fd_ok()}, {"max_relative", a.fd_max_relative}, {"tolerance", ko.tol_fd}};
  return a.passed();
}

inline bool cmd_torus_periods(const Problem& p, const Options&, Json& r) {
  const TorusPeriods t = torus_periods(p.fan, detail::need_psi(p, "torus-periods"));
  Json coefs = Json::array(), periods = Json::array();
  for (const auto& c : t.coefficients) {
    Json row = Json::array();
    for (const auto& z : c) row.push_back(io::complex_number(z, p.fan.table));
    coefs.push_back(std::move(row));
  }
  for (const auto& row : t.enclosures) {
    Json out = Json::array();
    for (const auto& [re, im] : row) out.push_back(Json{{"re", io::interval(re)}, {"im", io::interval(im)}});
    periods.push_back(std::move(out));
  }
  auto one_based = [](const std::vector<std::size_t>& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x + 1);
    return a;
  };
  r["solved_rows"] = one_based(t.solved_rows);
  r["kept_rows"] = one_based(t.kept_rows);
  r["coefficients"] = std::move(coefs);
  r["periods"] = std::move(periods);
  r["real_rank"] = t.real_rank;
  r["rank_ok"] = t.real_rank == 2 * p.psi->ell;
  return t.real_rank == 2 * p.psi->ell;
}

inline bool cmd_hopf(const Problem& p, const Options&, Json& r) {
  const HopfData h = hopf_data(p.fan, detail::need_psi(p, "hopf"));
  Json zeta = Json::array(), mod = Json::array(), arg = Json::array(), mult = Json::array();
  bool contracting = true;
  for (const auto& z : h.zeta) zeta.push_back(io::complex_number(z, p.fan.table));
  for (const auto& x : h.modulus) {
    mod.push_back(io::interval(x));
    if (!(x.midpoint() + x.radius() < 1)) contracting = false;
  }
  for (const auto& x : h.argument) arg.push_back(io::interval(x));
  for (const auto& [re, im] : h.multiplier) mult.push_back(Json{{"re", io::interval(re)}, {"im", io::interval(im)}});
  bool distinct = true;
  for (std::size_t a = 0; a < h.modulus.size(); ++a)
    for (std::size_t b = a + 1; b < h.modulus.size(); ++b)
      if (std::abs(h.modulus[a].midpoint() - h.modulus[b].midpoint()) <= h.modulus[a].radius() + h.modulus[b].radius())
        distinct = false;
  r["ghost"] = h.ghost + 1;
  r["lambda"] = io::scalars(h.lambda, p.fan.table);
  r["mu"] = io::scalars(h.mu, p.fan.table);
  r["alpha"] = io::complex_number(h.alpha, p.fan.table);
  r["inverted"] = h.inverted;
  r["zeta"] = std::move(zeta);
  r["modulus"] = std::move(mod);
  r["argument"] = std::move(arg);
  r["multiplier"] = std::move(mult);
  r["contracting"] = contracting;
  r["distinct_moduli"] = distinct;
  return contracting;
}

/// One analysis on a parsed problem.
inline Outcome analyze(const Problem& p, const Options& o) {
  using Fn = bool (*)(const Problem&, const Options&, Json&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"validate-fan", cmd_validate_fan}, {"complete", cmd_complete},
      {"normal-fan", cmd_normal_fan},     {"weak-normal", cmd_weak_normal},
      {"quadrics", cmd_quadrics},         {"psi-check", cmd_psi_check},
      {"psi-sample", cmd_psi_sample},     {"genericity", cmd_genericity},
      {"leaves", cmd_leaves},             {"seifert", cmd_seifert},
      {"coordinate-subs", cmd_coordinate_subs}, {"kahler-audit", cmd_kahler_audit},
      {"torus-periods", cmd_torus_periods}, {"hopf", cmd_hopf}};
  for (const auto& [name, fn] : table) {
    if (name != o.command) continue;
    Json r{{"tool", "mamlab"}, {"version", kVersion}, {"command", o.command}, {"input", p.name},
           {"options", Json{{"precision", o.precision}, {"seed", o.seed}, {"samples", o.samples},
                            {"height", o.height}, {"tol_eig", o.tol_eig}}}};
    if (!p.fan.table.empty()) r["symbol_check"] = detail::relation_json(scan_symbol_relations(p.fan.table));
    const bool ok = fn(p, o, r);
    r["ok"] = ok;
    return {std::move(r), ok ? 0 : 1};
  }
  throw InputError("unknown command '" + o.command + "'");
}

inline Outcome fixtures_command(const Options& o) {
  if (o.input.empty()) return {Json{{"fixtures", fixture_names()}}, 0};
  return {io::problem(fixture(o.input)), 0};
}

inline std::string read_file(const std::string& path) {
  if (path.empty()) throw InputError("missing input file");
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Runs one parsed request; errors become reports with a reason field.
inline Outcome execute(const Options& o) {
  auto error = [&](const char* reason, const std::string& message, int code) {
    return Outcome{Json{{"tool", "mamlab"}, {"version", kVersion}, {"command", o.command},
                        {"error", Json{{"reason", reason}, {"message", message}}}},
                   code};
  };
  try {
    if (o.command == "fixtures") return fixtures_command(o);
    return analyze(io::parse_problem(read_file(o.input)), o);
  } catch (const ParseError& e) {
    return error("parse", e.what(), 2);
  } catch (const InputError& e) {
    return error("input", e.what(), 2);
  } catch (const PrecisionExhausted& e) {
    return error("precision-exhausted", e.what(), 3);
  } catch (const DomainError& e) {
    return error("domain", e.what(), 2);
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Moment-angle manifold analyzer", "mamlab"};
  app.add_option("command", o.command, "Analysis to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("input", o.input, "Input JSON file (fixture name for 'fixtures')");
  app.add_option("--precision", o.precision, "Maximum interval precision in bits")->check(CLI::Range(64, 65536));
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--samples", o.samples, "Number of sample points")->check(CLI::Range(1, 100000));
  app.add_option("--height", o.height, "Height bound H for the rational subspace search")->check(CLI::Range(0, 5));
  app.add_option("--tol-eig", o.tol_eig, "Relative eigenvalue / singular value tolerance")
      ->check(CLI::Range(1e-300, 1.0));
  app.add_option("--out", o.out, "Write the report to this file instead of standard output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const Outcome res = execute(o);
  if (res.report.contains("error")) err << "mamlab: " << res.report["error"]["message"].get<std::string>() << "\n";
  if (res.report.contains("symbol_check"))
    for (const auto& rel : res.report["symbol_check"]["suspected_relations"])
      err << "mamlab: warning: symbols look algebraically dependent: " << rel.get<std::string>() << "\n";
  const std::string text = res.report.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "mamlab: cannot write '" << o.out << "'\n";
      return 2;
    }
    f << text;
  }
  return res.code;
}

}  // namespace mamlab::cli
