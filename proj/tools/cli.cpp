#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <new>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hocoalg/errors.hpp"
#include "hocoalg/freeab_comonad.hpp"
#include "hocoalg/json_io.hpp"
#include "hocoalg/sab.hpp"
#include "hocoalg/sset.hpp"
#include "hocoalg/susp_comonad.hpp"
#include "hocoalg/tower.hpp"

namespace hocoalg::cli {

namespace {

struct Options {
  int max_degree = 6;
  std::uint64_t seed = 1;
  std::size_t samples = 50;
  int coeff_box = 3;
  std::string out;

  std::string in;
  std::string map;
  std::string f;
  std::string g;
  std::string z;
  std::string w;
  std::string k;
  std::string group;
  std::string pi2;
  int r = 1;
  int level = -1;
  int n = 2;
  int codegree = 3;
  int w_size = 3;
};

struct Result {
  Json body = Json::object();
  bool ok = true;
};

using Handler = std::function<Result(const Options&, Json&)>;

Json read_json(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string(flag) + " is required");
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": malformed JSON (" + e.what() + ")");
  }
}

FiniteSimplicialSet read_sset(const std::string& path, const char* flag = "--in") {
  return sset_from_json(read_json(path, flag));
}

KCoalgebra read_coalgebra(const Options& o) { return coalgebra_from_json(read_json(o.in, "--in")); }

Moduli moduli_of(const AbelianGroup& g) {
  Moduli m(g.free_rank, Integer(0));
  m.insert(m.end(), g.torsion.begin(), g.torsion.end());
  return m;
}

AbelianGroup parse_group(const std::string& text, const char* flag) {
  if (text.empty()) throw InputError(std::string(flag) + " is required");
  return AbelianGroup::parse(text);
}

// A simplicial set becomes its reduced free abelian group stored to
// `sset_bound`; a simplicial abelian group is used as given.
SAbPtr read_carrier(const Options& o, int sset_bound) {
  const Json j = read_json(o.in, "--in");
  if (j.is_object() && j.contains("generators")) {
    return std::make_shared<const SimplicialAbelianGroup>(free_reduced(sset_from_json(j), sset_bound));
  }
  return std::make_shared<const SimplicialAbelianGroup>(sab_from_json(j));
}

Json vectors_to_json(const std::vector<IntVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(integer_to_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Result cmd_homology(const Options& o, Json&) {
  const auto x = read_sset(o.in);
  const auto a = free_reduced(x, o.max_degree + 1);
  const auto nc = normalized_chains(a);
  Json h = Json::object();
  for (int n = 0; n <= o.max_degree; ++n) {
    const AbelianGroup g = homology(nc.complex, n).group();
    if (!g.is_trivial()) h[std::to_string(n)] = g.to_string();
  }
  return {Json{{"H", std::move(h)}}, true};
}

Result cmd_pi(const Options& o, Json& params) {
  const SAbPtr a = read_carrier(o, o.max_degree + 1);
  params["degree_bound"] = a->bound;
  return {Json{{"pi", group_table_to_json(homotopy_table(*a))}}, true};
}

Result cmd_em(const Options& o, Json& params) {
  const AbelianGroup g = parse_group(o.group, "--group");
  params["group"] = g.to_string();
  params["n"] = o.n;
  if (o.n < 0) throw InputError("--n must be nonnegative");
  return {sab_to_json(eilenberg_maclane(g, o.n, o.max_degree)), true};
}

Result cmd_can(const Options& o, Json&) { return {coalgebra_to_json(can(read_sset(o.in), o.max_degree)), true}; }

Result cmd_coalg_check(const Options& o, Json&) {
  const auto report = check_coalgebra(read_coalgebra(o));
  return {coalgebra_report_to_json(report), report.ok()};
}

Result cmd_setlike(const Options& o, Json& params) {
  const KCoalgebra c = read_coalgebra(o);
  params["level"] = o.level;
  SetlikeOptions opts;
  opts.coeff_box = o.coeff_box;
  Json levels = Json::array();
  bool ok = true;
  for (int n = 0; n <= c.bound(); ++n) {
    if (o.level >= 0 && n != o.level) continue;
    const SetlikeResult s = setlike_elements(c, n, opts);
    ok = ok && !s.box_disagrees;
    levels.push_back(Json{{"level", n},
                          {"elements", vectors_to_json(s.elements)},
                          {"route", s.route},
                          {"box_checked", s.box_checked},
                          {"box_disagrees", s.box_disagrees}});
  }
  return {Json{{"levels", std::move(levels)}}, ok};
}

Result cmd_primitives(const Options& o, Json&) {
  SetlikeOptions opts;
  opts.coeff_box = o.coeff_box;
  const Primitives p = primitives(read_coalgebra(o), opts);
  Json body = sset_to_json(p.complex);
  Json elements = Json::array();
  for (const auto& level : p.elements) elements.push_back(vectors_to_json(level));
  body["elements"] = std::move(elements);
  return {std::move(body), true};
}

std::vector<LevelElement> random_w(const KCoalgebra& c, const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<int> levels;
  for (int n = 0; n <= c.bound(); ++n) {
    if (c.carrier->rank(n) > 0) levels.push_back(n);
  }
  std::vector<LevelElement> w;
  if (levels.empty()) return w;
  std::uniform_int_distribution<int> coeff(-std::max(o.coeff_box, 1), std::max(o.coeff_box, 1));
  for (int i = 0; i < o.w_size; ++i) {
    const int n = levels[std::uniform_int_distribution<std::size_t>(0, levels.size() - 1)(rng)];
    const std::size_t rank = c.carrier->rank(n);
    IntVector v(rank);
    const int terms = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int t = 0; t < terms; ++t) {
      int a = coeff(rng);
      if (a == 0) a = 1;
      v[std::uniform_int_distribution<std::size_t>(0, rank - 1)(rng)] += a;
    }
    w.push_back({n, std::move(v)});
  }
  return w;
}

std::vector<LevelElement> read_w(const std::string& path) {
  const Json j = read_json(path, "--w");
  if (!j.is_array()) throw InputError("--w: expected an array of {level, vector}");
  std::vector<LevelElement> w;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("level") || !e.contains("vector") || !e["vector"].is_array()) {
      throw InputError("--w: expected {level, vector}");
    }
    LevelElement le;
    le.level = e["level"].get<int>();
    for (const auto& x : e["vector"]) le.vector.push_back(integer_from_json(x, "--w"));
    w.push_back(std::move(le));
  }
  return w;
}

Result cmd_decompose(const Options& o, Json& params) {
  const KCoalgebra c = read_coalgebra(o);
  const std::vector<LevelElement> w = o.w.empty() ? random_w(c, o) : read_w(o.w);
  if (o.w.empty()) params["w_size"] = o.w_size;
  for (const auto& e : w) {
    if (e.level < 0 || e.level > c.bound() || e.vector.size() != c.carrier->rank(e.level)) {
      throw InputError("--w: element does not lie in the carrier");
    }
  }
  const Subcoalgebra sub = subcoalgebra_generated(c, w);
  Json wj = Json::array();
  for (const auto& e : w) wj.push_back(Json{{"level", e.level}, {"vector", vectors_to_json({e.vector})[0]}});
  Json gens = Json::object();
  for (std::size_t n = 0; n < sub.generators.size(); ++n) gens[std::to_string(n)] = vectors_to_json(sub.generators[n]);
  const auto& r = sub.report;
  Json report{{"ok", r.ok()},
              {"independent", r.independent},
              {"contains_w", r.contains_w},
              {"restricted_is_eta", r.restricted_is_eta},
              {"failures", r.failures}};
  return {Json{{"W", std::move(wj)}, {"generators", std::move(gens)}, {"report", std::move(report)}}, r.ok()};
}

Result cmd_recover_basis(const Options& o, Json&) {
  SetlikeOptions opts;
  opts.coeff_box = o.coeff_box;
  const RecoveredBasis r = recover_basis(read_coalgebra(o), opts);
  return {Json{{"ok", r.ok}, {"message", r.message}, {"complex", sset_to_json(r.primitives.complex)}}, r.ok};
}

Result cmd_suspend(const Options& o, Json& params) {
  params["r"] = o.r;
  if (o.r < 0) throw InputError("--r must be nonnegative");
  return {sset_to_json(suspend(read_sset(o.in), o.r)), true};
}

Result cmd_loops_level(const Options& o, Json& params) {
  const int k = std::max(o.level, 0);
  params["r"] = o.r;
  params["level"] = k;
  if (o.r < 1) throw InputError("--r must be at least 1");
  const auto y = read_sset(o.in);
  const auto loops = loops_level(y, o.r, k);
  const SuspComonadInstance inst(o.r, k);
  const auto disk = inst.disk_complex(k);
  Json elements = Json::array();
  for (const auto& l : loops) {
    Json table = Json::array();
    for (std::size_t g = 0; g < l.assignment.size(); ++g) {
      table.push_back(Json{{"gen", disk->generator(g).id}, {"image", simplex_to_json(y, l.assignment[g])}});
    }
    elements.push_back(std::move(table));
  }
  return {Json{{"count", loops.size()}, {"elements", std::move(elements)}}, true};
}

Result cmd_reflect_iso(const Options& o, Json& params) {
  params["r"] = o.r;
  if (o.r < 0) throw InputError("--r must be nonnegative");
  const SSetMap f = sset_map_from_json(read_json(o.map, "--map"));
  const ReflectIsoVerdict v = reflects_iso_check(f, o.r, o.max_degree);
  return {Json{{"f_iso", v.f_iso},
               {"sigma_f_iso", v.sigma_f_iso},
               {"consistent", v.consistent},
               {"f_failure_level", optional_int(v.f_failure_level)},
               {"sigma_failure_level", optional_int(v.sigma_failure_level)}},
          v.consistent};
}

Result cmd_smash_equalizer(const Options& o, Json&) {
  const SSetMap f = sset_map_from_json(read_json(o.f, "--f"));
  const SSetMap g = sset_map_from_json(read_json(o.g, "--g"));
  const auto z = read_sset(o.z, "--z");
  const SmashEqualizerReport r = smash_equalizer_commutes(f, g, z, o.max_degree);
  return {Json{{"commutes", r.commutes},
               {"failure_level", optional_int(r.failure_level)},
               {"lhs_simplices", r.lhs_simplices},
               {"rhs_simplices", r.rhs_simplices}},
          r.commutes};
}

Result cmd_cobar(const Options& o, Json& params, bool contraction) {
  params["codegree"] = o.codegree;
  const auto obj = cobar(read_sset(o.in), o.codegree, o.max_degree);
  const IdentityReport r = contraction ? check_contraction(obj, o.samples, o.seed)
                                       : check_cosimplicial_identities(obj, o.samples, o.seed);
  return {identity_report_to_json(r), r.ok()};
}

MatrixSemiCosimplicial read_cosimplicial(const Options& o) {
  const Json j = read_json(o.in, "--in");
  if (!j.is_object() || !j.contains("kind")) return cosimplicial_from_json(j);
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (!j.contains("object") || !j.contains("max_codegree") || !j["max_codegree"].is_number_integer()) {
    throw InputError("--in: expected {kind, object, max_codegree}");
  }
  auto a = std::make_shared<const SimplicialAbelianGroup>(sab_from_json(j["object"]));
  const int m = j["max_codegree"].get<int>();
  if (m < 0) throw InputError("--in: max_codegree must be nonnegative");
  if (kind == "constant") return constant_cosimplicial(a, m);
  if (kind == "insertion") return insertion_cosimplicial(a, m);
  throw InputError("--in: kind must be \"constant\" or \"insertion\"");
}

Result cmd_tot_res(const Options& o, Json& params) {
  params["n"] = o.n;
  const MatrixSemiCosimplicial obj = read_cosimplicial(o);
  const IdentityReport ids = check_cosimplicial_identities(obj);
  const auto stages = tot_res_tower(obj, o.n, o.max_degree);
  bool ok = ids.ok();
  Json sj = Json::array();
  for (const auto& s : stages) {
    Json e{{"n", s.n}, {"pi", group_table_to_json(homotopy_table(*s.object))}, {"fibration", s.fibration}};
    ok = ok && s.fibration;
    if (s.n == 0) {
      const SAbMap ev = tot_res_zero_evaluation(s, obj.codegrees[0]);
      bool iso = true;
      for (int k = 0; k <= ev.bound(); ++k) {
        iso = iso && is_isomorphism(s.object->levels[k], obj.codegrees[0]->levels[k], ev.components[k]);
      }
      e["zero_evaluation_iso"] = iso;
      ok = ok && iso;
    }
    sj.push_back(std::move(e));
  }
  return {Json{{"identities", identity_report_to_json(ids)}, {"stages", std::move(sj)}}, ok};
}

std::vector<KInvariantInput> read_k_invariants(const std::string& path) {
  if (path.empty()) return {};
  const Json j = read_json(path, "--k");
  if (!j.is_array()) throw InputError("--k: expected an array");
  std::vector<KInvariantInput> out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("degree") || !e["degree"].is_number_integer() || !e.contains("group") ||
        !e["group"].is_string()) {
      throw InputError("--k: expected {degree, group, components?}");
    }
    KInvariantInput k;
    k.degree = e["degree"].get<int>();
    k.group = moduli_of(AbelianGroup::parse(e["group"].get<std::string>()));
    if (e.contains("components")) {
      std::vector<IntMatrix> comps;
      for (const auto& m : e["components"]) comps.push_back(matrix_from_json(m, "--k.components"));
      k.components = std::move(comps);
    }
    out.push_back(std::move(k));
  }
  return out;
}

Json tower_to_json(const PostnikovTower& t) {
  Json stages = Json::array();
  for (const auto& s : t.stages) stages.push_back(Json{{"n", s.n}, {"pi", group_table_to_json(s.pi)}});
  return Json{{"ok", t.ok()}, {"degree_bound", t.degree_bound}, {"stages", std::move(stages)}, {"failures", t.failures}};
}

Result cmd_postnikov(const Options& o, Json& params) {
  PostnikovTower t;
  if (!o.pi2.empty()) {
    params["pi2"] = o.pi2;
    const auto x = read_sset(o.in);
    t = postnikov_tower(x, moduli_of(AbelianGroup::parse(o.pi2)), read_k_invariants(o.k), o.max_degree);
  } else {
    const SAbPtr a = read_carrier(o, o.max_degree);
    t = postnikov_tower(a, std::min(o.max_degree, a->bound));
  }
  return {tower_to_json(t), t.ok()};
}

Result cmd_fibrant_report(const Options& o, Json&) {
  const SAbPtr a = read_carrier(o, std::max(o.max_degree, 2));
  const FibrantReplacementReport r = fibrant_replacement_report(a, std::min(o.max_degree, a->bound));
  Json stages = Json::object();
  for (std::size_t n = 0; n < r.stage_pi.size(); ++n) stages[std::to_string(n)] = group_table_to_json(r.stage_pi[n]);
  return {Json{{"certified", r.certified},
               {"degree_bound", r.degree_bound},
               {"failure_degree", optional_int(r.failure_degree)},
               {"source_pi", group_table_to_json(r.source_pi)},
               {"stage_pi", std::move(stages)}},
          r.certified};
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--max-degree", o.max_degree, "Degree bound")->capture_default_str();
  sub->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  sub->add_option("--samples", o.samples, "Sample count")->capture_default_str();
  sub->add_option("--coeff-box", o.coeff_box, "Coefficient box B for setlike search")->capture_default_str();
  sub->add_option("--out", o.out, "Write the JSON result here instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite-stage homotopy computations on simplicial sets and simplicial abelian groups"};
  app.require_subcommand(1);
  std::map<std::string, Handler> handlers;
  std::string chosen;

  auto command = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    sub->callback([&chosen, name] { chosen = name; });
    handlers[name] = std::move(h);
    return sub;
  };

  command("homology", "Reduced homology of a simplicial set", cmd_homology)
      ->add_option("--in", o.in, "Simplicial set JSON");
  command("pi", "Homotopy groups of a simplicial abelian group (or of Z~X)", cmd_pi)
      ->add_option("--in", o.in, "Simplicial abelian group or simplicial set JSON");
  {
    auto* s = command("em", "Eilenberg-MacLane object K(G, n)", cmd_em);
    s->add_option("--group", o.group, "Group, e.g. Z, Z/12, Z^2, Z + Z/2");
    s->add_option("--n", o.n, "Degree")->capture_default_str();
  }
  command("can", "Canonical coalgebra can(X)", cmd_can)->add_option("--in", o.in, "Simplicial set JSON");
  command("coalg-check", "Counit, coassociativity and simplicial laws of a coalgebra", cmd_coalg_check)
      ->add_option("--in", o.in, "Coalgebra JSON");
  {
    auto* s = command("setlike", "Setlike elements of a coalgebra", cmd_setlike);
    s->add_option("--in", o.in, "Coalgebra JSON");
    s->add_option("--level", o.level, "Single level (default: all)");
  }
  command("primitives", "Simplicial set of setlike elements", cmd_primitives)
      ->add_option("--in", o.in, "Coalgebra JSON");
  {
    auto* s = command("decompose", "Sub-coalgebra generated by a finite set W", cmd_decompose);
    s->add_option("--in", o.in, "Coalgebra JSON");
    s->add_option("--w", o.w, "W as [{level, vector}] (default: random from --seed)");
    s->add_option("--w-size", o.w_size, "Size of a random W")->capture_default_str();
  }
  command("recover-basis", "Recover a simplicial basis from a coalgebra", cmd_recover_basis)
      ->add_option("--in", o.in, "Coalgebra JSON");
  {
    auto* s = command("suspend", "Suspension X ^ S^r", cmd_suspend);
    s->add_option("--in", o.in, "Simplicial set JSON");
    s->add_option("--r", o.r, "Suspension degree")->capture_default_str();
  }
  {
    auto* s = command("loops-level", "One level of the r-fold loop space", cmd_loops_level);
    s->add_option("--in", o.in, "Simplicial set JSON");
    s->add_option("--r", o.r, "Loop degree")->capture_default_str();
    s->add_option("--level", o.level, "Level k");
  }
  {
    auto* s = command("reflect-iso", "Compare f and Sigma^r f for being isomorphisms", cmd_reflect_iso);
    s->add_option("--map", o.map, "Map JSON");
    s->add_option("--r", o.r, "Suspension degree")->capture_default_str();
  }
  {
    auto* s = command("smash-equalizer", "Smash with Z commutes with the equalizer of f, g", cmd_smash_equalizer);
    s->add_option("--f", o.f, "Map JSON");
    s->add_option("--g", o.g, "Map JSON");
    s->add_option("--z", o.z, "Simplicial set JSON");
  }
  for (const bool contraction : {false, true}) {
    auto* s = command(contraction ? "contraction-check" : "cobar-check",
                      contraction ? "Extra codegeneracy identities on the cobar decalage"
                                  : "Cosimplicial identities of the cobar construction",
                      [contraction](const Options& opt, Json& p) { return cmd_cobar(opt, p, contraction); });
    s->add_option("--in", o.in, "Simplicial set JSON");
    s->add_option("--codegree", o.codegree, "Largest codegree")->capture_default_str();
  }
  {
    auto* s = command("tot-res", "Restricted totalization tower", cmd_tot_res);
    s->add_option("--in", o.in, "Semicosimplicial JSON, or {kind, object, max_codegree}");
    s->add_option("--n", o.n, "Last stage")->capture_default_str();
  }
  {
    auto* s = command("postnikov", "Postnikov tower", cmd_postnikov);
    s->add_option("--in", o.in, "Simplicial abelian group or simplicial set JSON");
    s->add_option("--pi2", o.pi2, "pi_2 of a 1-reduced simplicial set (k-invariant tower)");
    s->add_option("--k", o.k, "k-invariants as [{degree, group, components?}]");
  }
  command("fibrant-report", "Certify A -> X<N> as a pi-isomorphism below N", cmd_fibrant_report)
      ->add_option("--in", o.in, "Simplicial abelian group or simplicial set JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  Json params{{"max_degree", o.max_degree}, {"seed", o.seed}, {"samples", o.samples}, {"coeff_box", o.coeff_box}};
  Result result;
  try {
    if (o.max_degree < 0) throw InputError("--max-degree must be nonnegative");
    result = handlers.at(chosen)(o, params);
  } catch (const InputError& e) {
    err << Json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << Json{{"error", "precondition"}, {"message", e.what()}}.dump() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    err << Json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return kInputError;
  } catch (const std::bad_alloc&) {
    err << Json{{"error", "resource"}, {"message", "out of memory; lower --max-degree"}}.dump() << "\n";
    return kInputError;
  }
  result.body["command"] = chosen;
  result.body["params"] = std::move(params);
  const std::string text = result.body.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out);
    if (!file) {
      err << Json{{"error", "input"}, {"message", "cannot write " + o.out}}.dump() << "\n";
      return kInputError;
    }
    file << text;
  }
  return result.ok ? kPass : kMathFailure;
}

}  // namespace hocoalg::cli
