#include "hocoalg/json_io.hpp"

#include <limits>
#include <unordered_map>

#include "hocoalg/errors.hpp"

namespace hocoalg {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_array()) fail(where + "." + key, "expected an array");
  return v;
}

long long int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<long long>();
}

std::size_t index_field(const Json& j, const char* key, const std::string& where) {
  const long long v = int_field(j, key, where);
  if (v < 0) fail(where + "." + key, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

Json terms_to_json(const FreeElement& e) {
  Json out = Json::array();
  for (const auto& t : e.terms()) {
    if (e.depth() == 0) {
      out.push_back(Json::array({integer_to_json(t.coeff), t.basis}));
    } else {
      out.push_back(Json::array({integer_to_json(t.coeff), terms_to_json(*t.inner)}));
    }
  }
  return out;
}

FreeElement terms_from_json(const Json& j, int level, int depth, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a term list");
  std::vector<FreeElement::Term> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& t = j[i];
    const std::string w = at(where, i);
    if (!t.is_array() || t.size() != 2) fail(w, "expected [coefficient, atom]");
    FreeElement::Term term;
    term.coeff = integer_from_json(t[0], w);
    if (depth == 0) {
      if (!t[1].is_number_integer() || t[1].get<long long>() < 0) fail(w, "expected a basis index");
      term.basis = t[1].get<std::size_t>();
    } else {
      FreeElement inner = terms_from_json(t[1], level, depth - 1, w);
      if (inner.is_zero()) fail(w, "bracket of zero");
      term.inner = std::make_shared<const FreeElement>(std::move(inner));
    }
    terms.push_back(std::move(term));
  }
  return FreeElement::from_terms(level, depth, std::move(terms));
}

}  // namespace

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(static_cast<long long>(v.get_si()));
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) fail(where, "not a decimal integer");
    return v;
  }
  fail(where, "expected an integer");
}

Json matrix_to_json(const IntMatrix& m) {
  Json entries = Json::array();
  for (const auto& e : m.entries()) entries.push_back(Json::array({e.row, e.col, integer_to_json(e.value)}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

IntMatrix matrix_from_json(const Json& j, const std::string& where) {
  const std::size_t rows = index_field(j, "rows", where);
  const std::size_t cols = index_field(j, "cols", where);
  const Json& entries = array_field(j, "entries", where);
  std::vector<IntMatrix::Entry> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Json& e = entries[i];
    const std::string w = at(where + ".entries", i);
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      fail(w, "expected [row, col, value]");
    }
    const auto r = e[0].get<std::size_t>();
    const auto c = e[1].get<std::size_t>();
    if (r >= rows || c >= cols) fail(w, "entry outside the matrix");
    out.push_back({r, c, integer_from_json(e[2], w)});
  }
  return IntMatrix::from_triplets(rows, cols, std::move(out));
}

Json simplex_to_json(const FiniteSimplicialSet& x, const SimplexRef& r) {
  return Json{{"gen", x.generator(r.gen).id}, {"degens", r.degens}};
}

SimplexRef simplex_from_json(const FiniteSimplicialSet& x, const Json& j, const std::string& where) {
  const Json& g = field(j, "gen", where);
  if (!g.is_string()) fail(where + ".gen", "expected a generator id");
  const auto idx = x.find(g.get<std::string>());
  if (!idx) fail(where + ".gen", "unknown generator \"" + g.get<std::string>() + "\"");
  SimplexRef r{*idx, {}};
  const Json& d = array_field(j, "degens", where);
  for (const auto& v : d) {
    if (!v.is_number_integer()) fail(where + ".degens", "expected integers");
    r.degens.push_back(v.get<int>());
  }
  for (std::size_t i = 1; i < r.degens.size(); ++i) {
    if (r.degens[i - 1] <= r.degens[i]) fail(where + ".degens", "must be strictly decreasing");
  }
  if (!r.degens.empty() && (r.degens.back() < 0 || r.degens.front() > x.generator(r.gen).dim + static_cast<int>(r.degens.size()) - 1)) {
    fail(where + ".degens", "index out of range");
  }
  return r;
}

Json sset_to_json(const FiniteSimplicialSet& x) {
  Json gens = Json::array();
  for (const auto& g : x.generators()) {
    Json faces = Json::array();
    for (const auto& f : g.faces) faces.push_back(simplex_to_json(x, f));
    gens.push_back(Json{{"id", g.id}, {"dim", g.dim}, {"faces", std::move(faces)}});
  }
  return Json{{"generators", std::move(gens)}, {"basepoint", x.generator(x.basepoint()).id}};
}

FiniteSimplicialSet sset_from_json(const Json& j) {
  const std::string where = "sset";
  const Json& gens = array_field(j, "generators", where);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Json& id = field(gens[i], "id", at(where + ".generators", i));
    if (!id.is_string()) fail(at(where + ".generators", i) + ".id", "expected a string");
    if (!index.emplace(id.get<std::string>(), i).second) {
      fail(at(where + ".generators", i), "duplicate id \"" + id.get<std::string>() + "\"");
    }
  }
  std::vector<Generator> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string w = at(where + ".generators", i);
    Generator g;
    g.id = gens[i]["id"].get<std::string>();
    const long long dim = int_field(gens[i], "dim", w);
    if (dim < 0) fail(w + ".dim", "negative dimension");
    g.dim = static_cast<int>(dim);
    const Json& faces = array_field(gens[i], "faces", w);
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const std::string fw = at(w + ".faces", f);
      const Json& gen = field(faces[f], "gen", fw);
      if (!gen.is_string() || !index.count(gen.get<std::string>())) fail(fw + ".gen", "unknown generator");
      SimplexRef r{index.at(gen.get<std::string>()), {}};
      for (const auto& v : array_field(faces[f], "degens", fw)) {
        if (!v.is_number_integer()) fail(fw + ".degens", "expected integers");
        r.degens.push_back(v.get<int>());
      }
      g.faces.push_back(std::move(r));
    }
    out.push_back(std::move(g));
  }
  const Json& bp = field(j, "basepoint", where);
  if (!bp.is_string()) fail(where + ".basepoint", "expected a generator id");
  return FiniteSimplicialSet::from_ids(std::move(out), bp.get<std::string>());
}

Json sset_map_to_json(const SSetMap& f) {
  Json assignment = Json::array();
  for (std::size_t g = 0; g < f.assignment().size(); ++g) {
    assignment.push_back(Json{{"gen", f.source().generator(g).id},
                              {"image", simplex_to_json(f.target(), f.assignment()[g])}});
  }
  return Json{{"source", sset_to_json(f.source())},
              {"target", sset_to_json(f.target())},
              {"assignment", std::move(assignment)}};
}

SSetMap sset_map_from_json(const Json& j) {
  auto source = std::make_shared<const FiniteSimplicialSet>(sset_from_json(field(j, "source", "map")));
  auto target = std::make_shared<const FiniteSimplicialSet>(sset_from_json(field(j, "target", "map")));
  const Json& a = array_field(j, "assignment", "map");
  std::vector<std::optional<SimplexRef>> slots(source->num_generators());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string w = at("map.assignment", i);
    const Json& g = field(a[i], "gen", w);
    const auto idx = g.is_string() ? source->find(g.get<std::string>()) : std::nullopt;
    if (!idx) fail(w + ".gen", "unknown source generator");
    if (slots[*idx]) fail(w, "generator assigned twice");
    slots[*idx] = simplex_from_json(*target, field(a[i], "image", w), w + ".image");
  }
  std::vector<SimplexRef> images;
  for (std::size_t g = 0; g < slots.size(); ++g) {
    if (!slots[g]) fail("map.assignment", "no image for \"" + source->generator(g).id + "\"");
    images.push_back(*slots[g]);
  }
  return SSetMap(source, target, std::move(images));
}

Json sab_to_json(const SimplicialAbelianGroup& a) {
  Json levels = Json::array();
  for (int n = 0; n <= a.bound; ++n) {
    Json torsion = Json::array();
    for (const auto& m : a.levels[n]) torsion.push_back(integer_to_json(m));
    Json faces = Json::array();
    for (const auto& f : a.faces[n]) faces.push_back(matrix_to_json(f));
    Json degens = Json::array();
    for (const auto& d : a.degens[n]) degens.push_back(matrix_to_json(d));
    levels.push_back(Json{{"rank", a.rank(n)},
                          {"torsion", std::move(torsion)},
                          {"faces", std::move(faces)},
                          {"degens", std::move(degens)}});
  }
  return Json{{"bound", a.bound}, {"levels", std::move(levels)}};
}

SimplicialAbelianGroup sab_from_json(const Json& j) {
  const std::string where = "sab";
  SimplicialAbelianGroup a;
  const long long bound = int_field(j, "bound", where);
  if (bound < 0) fail(where + ".bound", "negative bound");
  a.bound = static_cast<int>(bound);
  const Json& levels = array_field(j, "levels", where);
  if (levels.size() != static_cast<std::size_t>(a.bound) + 1) fail(where + ".levels", "expected bound + 1 levels");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const std::string w = at(where + ".levels", n);
    const std::size_t rank = index_field(levels[n], "rank", w);
    Moduli mod;
    const Json& torsion = array_field(levels[n], "torsion", w);
    if (torsion.size() != rank) fail(w + ".torsion", "expected one modulus per coordinate");
    for (const auto& t : torsion) {
      Integer m = integer_from_json(t, w + ".torsion");
      if (m < 0 || m == 1) fail(w + ".torsion", "moduli must be 0 or at least 2");
      mod.push_back(std::move(m));
    }
    a.levels.push_back(std::move(mod));
    auto& faces = a.faces.emplace_back();
    const Json& fj = array_field(levels[n], "faces", w);
    for (std::size_t i = 0; i < fj.size(); ++i) faces.push_back(matrix_from_json(fj[i], at(w + ".faces", i)));
    auto& degens = a.degens.emplace_back();
    const Json& dj = array_field(levels[n], "degens", w);
    for (std::size_t i = 0; i < dj.size(); ++i) degens.push_back(matrix_from_json(dj[i], at(w + ".degens", i)));
  }
  if (auto err = a.check()) fail(where, *err);
  return a;
}

Json sab_map_to_json(const SAbMap& f) {
  Json comps = Json::array();
  for (const auto& c : f.components) comps.push_back(matrix_to_json(c));
  return Json{{"components", std::move(comps)}};
}

SAbMap sab_map_from_json(const Json& j, SAbPtr source, SAbPtr target) {
  SAbMap f{std::move(source), std::move(target), {}};
  const Json& comps = array_field(j, "components", "sab_map");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    f.components.push_back(matrix_from_json(comps[i], at("sab_map.components", i)));
  }
  if (auto err = f.check()) fail("sab_map", *err);
  return f;
}

Json free_element_to_json(const FreeElement& e) {
  return Json{{"level", e.level()}, {"depth", e.depth()}, {"terms", terms_to_json(e)}};
}

FreeElement free_element_from_json(const Json& j) {
  const std::string where = "element";
  const long long level = int_field(j, "level", where);
  const long long depth = int_field(j, "depth", where);
  if (level < 0 || depth < 0) fail(where, "level and depth must be nonnegative");
  return terms_from_json(field(j, "terms", where), static_cast<int>(level), static_cast<int>(depth),
                         where + ".terms");
}

Json coalgebra_to_json(const KCoalgebra& c) {
  Json coaction = Json::array();
  for (std::size_t n = 0; n < c.coaction.size(); ++n) {
    for (std::size_t i = 0; i < c.coaction[n].size(); ++i) {
      coaction.push_back(Json{{"level", n}, {"basis_index", i}, {"image", free_element_to_json(c.coaction[n][i])}});
    }
  }
  Json out{{"carrier", sab_to_json(*c.carrier)}, {"coaction", std::move(coaction)}};
  if (!c.labels.empty()) out["labels"] = c.labels;
  return out;
}

KCoalgebra coalgebra_from_json(const Json& j) {
  KCoalgebra c;
  c.carrier = std::make_shared<const SimplicialAbelianGroup>(sab_from_json(field(j, "carrier", "coalgebra")));
  c.coaction.resize(c.carrier->bound + 1);
  std::vector<std::vector<bool>> seen(c.carrier->bound + 1);
  for (int n = 0; n <= c.carrier->bound; ++n) {
    c.coaction[n].assign(c.carrier->rank(n), FreeElement::zero(n, 1));
    seen[n].assign(c.carrier->rank(n), false);
  }
  const Json& co = array_field(j, "coaction", "coalgebra");
  for (std::size_t k = 0; k < co.size(); ++k) {
    const std::string w = at("coalgebra.coaction", k);
    const std::size_t n = index_field(co[k], "level", w);
    const std::size_t i = index_field(co[k], "basis_index", w);
    if (n >= c.coaction.size() || i >= c.coaction[n].size()) fail(w, "no such basis vector");
    if (seen[n][i]) fail(w, "basis vector tabulated twice");
    seen[n][i] = true;
    c.coaction[n][i] = free_element_from_json(field(co[k], "image", w));
  }
  for (std::size_t n = 0; n < seen.size(); ++n) {
    for (std::size_t i = 0; i < seen[n].size(); ++i) {
      if (!seen[n][i]) {
        fail("coalgebra.coaction", "missing image of basis vector " + std::to_string(i) + " at level " +
                                       std::to_string(n));
      }
    }
  }
  if (j.contains("labels")) {
    try {
      c.labels = j["labels"].get<std::vector<std::vector<std::string>>>();
    } catch (const Json::exception&) {
      fail("coalgebra.labels", "expected lists of strings");
    }
  }
  return c;
}

Json cosimplicial_to_json(const MatrixSemiCosimplicial& z) {
  Json codegrees = Json::array();
  for (const auto& a : z.codegrees) codegrees.push_back(sab_to_json(*a));
  Json cofaces = Json::array();
  for (const auto& row : z.cofaces) {
    Json r = Json::array();
    for (const auto& f : row) r.push_back(sab_map_to_json(f));
    cofaces.push_back(std::move(r));
  }
  return Json{{"codegrees", std::move(codegrees)}, {"cofaces", std::move(cofaces)}};
}

MatrixSemiCosimplicial cosimplicial_from_json(const Json& j) {
  MatrixSemiCosimplicial z;
  const Json& cd = array_field(j, "codegrees", "cosimplicial");
  for (const auto& a : cd) z.codegrees.push_back(std::make_shared<const SimplicialAbelianGroup>(sab_from_json(a)));
  const Json& cf = array_field(j, "cofaces", "cosimplicial");
  if (z.codegrees.empty() || cf.size() + 1 != z.codegrees.size()) {
    fail("cosimplicial.cofaces", "expected one list of cofaces per codegree below the top");
  }
  for (std::size_t m = 0; m < cf.size(); ++m) {
    const std::string w = at("cosimplicial.cofaces", m);
    if (!cf[m].is_array() || cf[m].size() != m + 2) fail(w, "expected " + std::to_string(m + 2) + " cofaces");
    auto& row = z.cofaces.emplace_back();
    for (const auto& f : cf[m]) row.push_back(sab_map_from_json(f, z.codegrees[m], z.codegrees[m + 1]));
  }
  return z;
}

Json group_to_json(const AbelianGroup& g) { return Json(g.to_string()); }

Json group_table_to_json(const std::vector<AbelianGroup>& table) {
  Json out = Json::object();
  for (std::size_t n = 0; n < table.size(); ++n) out[std::to_string(n)] = group_to_json(table[n]);
  return out;
}

Json identity_report_to_json(const IdentityReport& r) {
  Json tallies = Json::array();
  for (const auto& t : r.tallies) {
    Json e{{"identity", t.name}, {"checked", t.checked}, {"failed", t.failed}};
    if (t.witness) e["witness"] = *t.witness;
    tallies.push_back(std::move(e));
  }
  return Json{{"ok", r.ok()}, {"seed", r.seed}, {"samples", r.samples}, {"checked", r.checked()},
              {"tallies", std::move(tallies)}};
}

Json coalgebra_report_to_json(const CoalgebraReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back(Json{{"law", f.law}, {"level", f.level}, {"basis_index", f.basis_index}, {"detail", f.detail}});
  }
  return Json{{"ok", r.ok()},
              {"counit", r.counit_ok},
              {"coassociativity", r.coassoc_ok},
              {"simplicial", r.simplicial_ok},
              {"structure", r.structure_ok},
              {"failures", std::move(failures)}};
}

}  // namespace hocoalg
