#include "hocoalg/freeab_comonad.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hocoalg/errors.hpp"

namespace hocoalg {

namespace {

int compare_atoms(const FreeElement::Term& a, const FreeElement::Term& b, int depth) {
  if (depth == 0) return a.basis < b.basis ? -1 : (a.basis > b.basis ? 1 : 0);
  return a.inner->compare(*b.inner);
}

std::string vector_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// FreeElement

FreeElement FreeElement::zero(int level, int depth) {
  FreeElement e;
  e.level_ = level;
  e.depth_ = depth;
  return e;
}

FreeElement FreeElement::basis(int level, std::size_t index, const Integer& coeff) {
  FreeElement e = zero(level, 0);
  if (coeff != 0) e.terms_.push_back(Term{index, nullptr, coeff});
  return e;
}

FreeElement FreeElement::from_vector(int level, const IntVector& v) {
  FreeElement e = zero(level, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) e.terms_.push_back(Term{i, nullptr, v[i]});
  }
  return e;
}

FreeElement FreeElement::bracket(const FreeElement& inner) {
  FreeElement e = zero(inner.level_, inner.depth_ + 1);
  if (!inner.is_zero()) {
    e.terms_.push_back(Term{0, std::make_shared<const FreeElement>(inner), Integer(1)});
  }
  return e;
}

FreeElement FreeElement::from_terms(int level, int depth, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (depth > 0 && (!t.inner || t.inner->depth_ != depth - 1 || t.inner->level_ != level)) {
      throw PreconditionError("FreeElement: bracket atom of the wrong type");
    }
    if (depth > 0 && t.inner->is_zero()) {
      throw PreconditionError("FreeElement: bracket atoms must be nonzero");
    }
  }
  std::sort(terms.begin(), terms.end(), [depth](const Term& a, const Term& b) {
    return compare_atoms(a, b, depth) < 0;
  });
  FreeElement e = zero(level, depth);
  for (auto& t : terms) {
    if (!e.terms_.empty() && compare_atoms(e.terms_.back(), t, depth) == 0) {
      e.terms_.back().coeff += t.coeff;
      if (e.terms_.back().coeff == 0) e.terms_.pop_back();
    } else if (t.coeff != 0) {
      e.terms_.push_back(std::move(t));
    }
  }
  return e;
}

IntVector FreeElement::to_vector(std::size_t rank) const {
  if (depth_ != 0) throw PreconditionError("to_vector: element has positive depth");
  IntVector v(rank);
  for (const auto& t : terms_) {
    if (t.basis >= rank) throw PreconditionError("to_vector: basis index out of range");
    v[t.basis] = t.coeff;
  }
  return v;
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
  if (o.depth_ != depth_ || o.level_ != level_) {
    throw PreconditionError("FreeElement: adding elements of different type");
  }
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return from_terms(level_, depth_, std::move(all));
}

FreeElement FreeElement::operator-(const FreeElement& o) const { return *this + (-o); }

FreeElement FreeElement::operator-() const { return scaled(-1); }

FreeElement FreeElement::scaled(const Integer& c) const {
  if (c == 0) return zero(level_, depth_);
  FreeElement e = *this;
  for (auto& t : e.terms_) t.coeff *= c;
  return e;
}

int FreeElement::compare(const FreeElement& o) const {
  if (depth_ != o.depth_) return depth_ < o.depth_ ? -1 : 1;
  if (level_ != o.level_) return level_ < o.level_ ? -1 : 1;
  const std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (int c = compare_atoms(terms_[k], o.terms_[k], depth_)) return c;
    if (int c = cmp(terms_[k].coeff, o.terms_[k].coeff)) return c < 0 ? -1 : 1;
  }
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
  return 0;
}

std::string FreeElement::to_string(const std::function<std::string(std::size_t)>& name) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    Integer c = t.coeff;
    if (k == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    if (c != 1) out += c.get_str();
    if (depth_ == 0) {
      out += name ? name(t.basis) : "e" + std::to_string(t.basis);
    } else {
      out += "[" + t.inner->to_string(name) + "]";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comonad structure

FreeElement counit(const FreeElement& e) {
  if (e.depth() < 1) throw PreconditionError("counit: depth must be >= 1");
  std::vector<FreeElement::Term> all;
  for (const auto& t : e.terms()) {
    for (auto inner : t.inner->terms()) {
      inner.coeff *= t.coeff;
      all.push_back(std::move(inner));
    }
  }
  return FreeElement::from_terms(e.level(), e.depth() - 1, std::move(all));
}

FreeElement comultiply(const FreeElement& e) {
  if (e.depth() < 1) throw PreconditionError("comultiply: depth must be >= 1");
  std::vector<FreeElement::Term> all;
  for (const auto& t : e.terms()) {
    all.push_back({0, std::make_shared<const FreeElement>(FreeElement::bracket(*t.inner)), t.coeff});
  }
  return FreeElement::from_terms(e.level(), e.depth() + 1, std::move(all));
}

namespace {

// K f at a possibly different level; inner results of depth `inner_depth`.
FreeElement map_atoms(const FreeElement& e, int level, int inner_depth,
                      const std::function<FreeElement(const FreeElement&)>& f) {
  std::vector<FreeElement::Term> all;
  for (const auto& t : e.terms()) {
    FreeElement img = f(*t.inner);
    if (img.depth() != inner_depth || img.level() != level) {
      throw PreconditionError("K f: image has the wrong type");
    }
    if (img.is_zero()) continue;
    all.push_back({0, std::make_shared<const FreeElement>(std::move(img)), t.coeff});
  }
  return FreeElement::from_terms(level, inner_depth + 1, std::move(all));
}

FreeElement structure_map(const FreeElement& e, int target_level,
                          const std::function<IntMatrix()>& matrix,
                          const SimplicialAbelianGroup& carrier,
                          const std::function<FreeElement(const FreeElement&)>& recurse) {
  if (e.depth() == 0) {
    const IntMatrix m = matrix();
    return FreeElement::from_vector(target_level, m * e.to_vector(carrier.rank(e.level())));
  }
  return map_atoms(e, target_level, e.depth() - 1, recurse);
}

}  // namespace

FreeElement apply_K(const FreeElement& e,
                    const std::function<FreeElement(const FreeElement&)>& f) {
  if (e.depth() < 1) throw PreconditionError("apply_K: depth must be >= 1");
  if (e.is_zero()) return e;
  const int inner_depth = f(*e.terms().front().inner).depth();
  return map_atoms(e, e.level(), inner_depth, f);
}

std::vector<FreeElement> support(const FreeElement& e) {
  if (e.depth() != 1) throw PreconditionError("support: depth must be 1");
  std::vector<FreeElement> out;
  for (const auto& t : e.terms()) out.push_back(*t.inner);
  return out;
}

FreeElement face(const FreeElement& e, int i, const SimplicialAbelianGroup& carrier) {
  const int n = e.level();
  if (n < 1 || n > carrier.bound || i < 0 || i > n) {
    throw std::out_of_range("face: index out of range");
  }
  return structure_map(
      e, n - 1, [&] { return carrier.faces[n][i]; }, carrier,
      [&](const FreeElement& q) { return face(q, i, carrier); });
}

FreeElement degeneracy(const FreeElement& e, int j, const SimplicialAbelianGroup& carrier) {
  const int n = e.level();
  if (n >= carrier.bound || j < 0 || j > n) {
    throw std::out_of_range("degeneracy: index out of range");
  }
  return structure_map(
      e, n + 1, [&] { return carrier.degens[n][j]; }, carrier,
      [&](const FreeElement& q) { return degeneracy(q, j, carrier); });
}

// ---------------------------------------------------------------------------
// Coalgebras

FreeElement KCoalgebra::delta(const FreeElement& p) const {
  if (p.depth() != 0) throw PreconditionError("delta: argument must have depth 0");
  std::vector<FreeElement::Term> all;
  for (const auto& t : p.terms()) {
    const FreeElement& img = coaction.at(p.level()).at(t.basis);
    for (auto term : img.terms()) {
      term.coeff *= t.coeff;
      all.push_back(std::move(term));
    }
  }
  return FreeElement::from_terms(p.level(), 1, std::move(all));
}

FreeElement KCoalgebra::delta(int level, const IntVector& v) const {
  return delta(FreeElement::from_vector(level, v));
}

FreeElement KCoalgebra::k_delta(const FreeElement& e) const {
  if (e.depth() != 1) throw PreconditionError("k_delta: argument must have depth 1");
  return map_atoms(e, e.level(), 1, [this](const FreeElement& q) { return delta(q); });
}

std::optional<std::string> KCoalgebra::structural_error() const {
  if (!carrier) return "coalgebra has no carrier";
  if (coaction.size() != static_cast<std::size_t>(carrier->bound) + 1) {
    return "coaction must be tabulated on every level up to the bound";
  }
  for (int n = 0; n <= carrier->bound; ++n) {
    for (const auto& t : carrier->levels[n]) {
      if (t != 0) return "carrier level " + std::to_string(n) + " has torsion";
    }
    if (coaction[n].size() != carrier->rank(n)) {
      return "coaction on level " + std::to_string(n) + " does not cover the basis";
    }
    for (std::size_t i = 0; i < coaction[n].size(); ++i) {
      const auto& img = coaction[n][i];
      if (img.depth() != 1 || img.level() != n) {
        return "coaction of basis " + std::to_string(i) + " on level " + std::to_string(n) +
               " is not a depth-1 element of that level";
      }
      for (const auto& t : img.terms()) {
        for (const auto& a : t.inner->terms()) {
          if (a.basis >= carrier->rank(n)) {
            return "coaction on level " + std::to_string(n) + " uses a basis index out of range";
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::function<std::string(std::size_t)> KCoalgebra::namer(int level) const {
  if (level < static_cast<int>(labels.size()) && !labels[level].empty()) {
    const auto* names = &labels[level];
    return [names](std::size_t i) {
      return i < names->size() ? (*names)[i] : "e" + std::to_string(i);
    };
  }
  return {};
}

KCoalgebra can(const FiniteSimplicialSet& x, int bound) {
  KCoalgebra c;
  c.carrier = std::make_shared<const SimplicialAbelianGroup>(free_reduced(x, bound));
  const ReducedBasis basis(x, bound);
  for (int n = 0; n <= bound; ++n) {
    auto& row = c.coaction.emplace_back();
    auto& names = c.labels.emplace_back();
    for (std::size_t i = 0; i < basis.level(n).size(); ++i) {
      row.push_back(FreeElement::bracket(FreeElement::basis(n, i)));
      names.push_back(x.label(basis.level(n)[i]));
    }
  }
  return c;
}

CoalgebraReport check_coalgebra(const KCoalgebra& c) {
  CoalgebraReport r;
  auto fail = [&](const std::string& law, int n, std::size_t i, std::string detail) {
    if (law == "counit") r.counit_ok = false;
    if (law == "coassociativity") r.coassoc_ok = false;
    if (law == "simplicial") r.simplicial_ok = false;
    if (law == "structure") r.structure_ok = false;
    if (r.failures.size() < 200) r.failures.push_back({law, n, i, std::move(detail)});
  };
  if (auto err = c.structural_error()) {
    fail("structure", 0, 0, *err);
    return r;
  }
  if (auto err = c.carrier->check()) {
    fail("structure", 0, 0, "carrier: " + *err);
    return r;
  }
  const auto& a = *c.carrier;
  for (int n = 0; n <= c.bound(); ++n) {
    const auto name = c.namer(n);
    for (std::size_t i = 0; i < a.rank(n); ++i) {
      const FreeElement e = FreeElement::basis(n, i);
      const FreeElement& d = c.coaction[n][i];
      const FreeElement eps = counit(d);
      if (eps != e) {
        fail("counit", n, i, "eps(delta(" + e.to_string(name) + ")) = " + eps.to_string(name));
      }
      const FreeElement lhs = c.k_delta(d);
      const FreeElement rhs = comultiply(d);
      if (lhs != rhs) {
        fail("coassociativity", n, i,
             "K delta(delta x) = " + lhs.to_string(name) + " but Delta(delta x) = " +
                 rhs.to_string(name));
      }
      for (int j = 0; n > 0 && j <= n; ++j) {
        const FreeElement l = c.delta(face(e, j, a));
        const FreeElement rr = face(d, j, a);
        if (l != rr) {
          fail("simplicial", n, i,
               "delta(d" + std::to_string(j) + " x) = " + l.to_string(c.namer(n - 1)) +
                   " but d" + std::to_string(j) + "(delta x) = " + rr.to_string(c.namer(n - 1)));
        }
      }
      for (int j = 0; n < c.bound() && j <= n; ++j) {
        const FreeElement l = c.delta(degeneracy(e, j, a));
        const FreeElement rr = degeneracy(d, j, a);
        if (l != rr) {
          fail("simplicial", n, i,
               "delta(s" + std::to_string(j) + " x) = " + l.to_string(c.namer(n + 1)) +
                   " but s" + std::to_string(j) + "(delta x) = " + rr.to_string(c.namer(n + 1)));
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Setlike elements and primitives

namespace {

bool is_setlike(const KCoalgebra& c, int n, const IntVector& q) {
  if (is_zero(q)) return false;
  const FreeElement p = FreeElement::from_vector(n, q);
  return c.delta(p) == FreeElement::bracket(p);
}

}  // namespace

SetlikeResult setlike_elements(const KCoalgebra& c, int n, const SetlikeOptions& opts) {
  if (n < 0 || n > c.bound()) throw PreconditionError("setlike_elements: level outside the bound");
  const std::size_t r = c.carrier->rank(n);
  SetlikeResult out;
  out.coeff_box = opts.coeff_box;
  bool diagonal = true;
  for (std::size_t i = 0; i < r && diagonal; ++i) {
    diagonal = c.coaction[n][i] == FreeElement::bracket(FreeElement::basis(n, i));
  }
  std::set<IntVector> found;
  if (diagonal) {
    out.route = "basis-diagonal";
    for (std::size_t i = 0; i < r; ++i) {
      IntVector v(r);
      v[i] = 1;
      found.insert(v);
    }
  } else {
    out.route = "support";
    std::set<IntVector> candidates;
    for (std::size_t i = 0; i < r; ++i) {
      for (const auto& q : support(c.coaction[n][i])) candidates.insert(q.to_vector(r));
    }
    for (const auto& q : candidates) {
      if (is_setlike(c, n, q)) found.insert(q);
    }
  }
  out.elements.assign(found.begin(), found.end());

  // Exhaustive cross-check over the coefficient box when it is small.
  const long side = 2L * opts.coeff_box + 1;
  double size = 1;
  for (std::size_t i = 0; i < r; ++i) size *= static_cast<double>(side);
  if (opts.coeff_box >= 0 && size <= static_cast<double>(opts.box_limit)) {
    std::set<IntVector> in_box;
    IntVector v(r, Integer(-opts.coeff_box));
    for (;;) {
      if (is_setlike(c, n, v)) in_box.insert(v);
      std::size_t k = 0;
      while (k < r && v[k] == opts.coeff_box) v[k++] = -opts.coeff_box;
      if (k == r) break;
      v[k] += 1;
    }
    std::set<IntVector> expected;
    for (const auto& q : found) {
      bool inside = true;
      for (const auto& x : q) inside = inside && abs(x) <= opts.coeff_box;
      if (inside) expected.insert(q);
    }
    out.box_checked = true;
    out.box_disagrees = in_box != expected;
  }
  return out;
}

Primitives primitives(const KCoalgebra& c, const SetlikeOptions& opts) {
  if (auto err = c.structural_error()) throw PreconditionError("primitives: " + *err);
  const auto& a = *c.carrier;
  Primitives out;
  std::vector<std::map<IntVector, std::size_t>> where;
  for (int n = 0; n <= c.bound(); ++n) {
    out.searches.push_back(setlike_elements(c, n, opts));
    auto& level = out.elements.emplace_back();
    level.push_back(IntVector(a.rank(n)));
    for (const auto& q : out.searches.back().elements) level.push_back(q);
    auto& w = where.emplace_back();
    for (std::size_t e = 0; e < level.size(); ++e) w.emplace(level[e], e);
  }
  auto lookup = [&](int n, const IntVector& v, const char* what) {
    auto it = where[n].find(v);
    if (it == where[n].end()) {
      throw PreconditionError(std::string("primitives: ") + what + " of a setlike element on level " +
                              std::to_string(n) + " is not setlike");
    }
    return it->second;
  };
  std::set<std::string> used;
  LevelwiseData data;
  data.max_level = c.bound();
  for (const auto& level : out.elements) data.counts.push_back(level.size());
  data.basepoint = 0;
  data.face = [&](int n, std::size_t e, int i) {
    return lookup(n - 1, a.faces[n][i] * out.elements[n][e], "a face");
  };
  data.degeneracy = [&](int n, std::size_t e, int j) {
    return lookup(n + 1, a.degens[n][j] * out.elements[n][e], "a degeneracy");
  };
  data.label = [&](int n, std::size_t e) {
    std::string name;
    const IntVector& v = out.elements[n][e];
    if (e == 0) {
      name = "*";
    } else {
      std::size_t nonzero = 0, at = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) ++nonzero, at = i;
      }
      const auto name_of = c.namer(n);
      if (nonzero == 1 && v[at] == 1 && name_of) {
        name = name_of(at);
      } else {
        name = "L" + std::to_string(n) + vector_string(v);
      }
    }
    while (used.count(name)) name += "'";
    used.insert(name);
    return name;
  };
  auto built = from_levels(data);
  out.complex = std::move(built.complex);
  out.refs = std::move(built.refs);
  return out;
}

// ---------------------------------------------------------------------------
// Sub-coalgebras generated by finite sets

Subcoalgebra subcoalgebra_generated(const KCoalgebra& c, const std::vector<LevelElement>& w) {
  if (auto err = c.structural_error()) throw PreconditionError("subcoalgebra_generated: " + *err);
  const auto& a = *c.carrier;
  const int bound = c.bound();
  for (const auto& p : w) {
    if (p.level < 0 || p.level > bound || p.vector.size() != a.rank(p.level)) {
      throw PreconditionError("subcoalgebra_generated: element outside the carrier");
    }
  }
  std::vector<std::set<IntVector>> g(bound + 1);
  std::vector<std::pair<int, IntVector>> queue;
  for (const auto& p : w) {
    for (const auto& q : support(c.delta(p.level, p.vector))) {
      IntVector v = q.to_vector(a.rank(p.level));
      if (g[p.level].insert(v).second) queue.emplace_back(p.level, std::move(v));
    }
  }
  while (!queue.empty()) {
    auto [n, v] = std::move(queue.back());
    queue.pop_back();
    auto visit = [&](int m, IntVector u) {
      if (is_zero(u)) return;
      if (g[m].insert(u).second) queue.emplace_back(m, std::move(u));
    };
    for (int i = 0; n > 0 && i <= n; ++i) visit(n - 1, a.faces[n][i] * v);
    for (int j = 0; n < bound && j <= n; ++j) visit(n + 1, a.degens[n][j] * v);
  }

  Subcoalgebra out;
  auto carrier = std::make_shared<SimplicialAbelianGroup>();
  carrier->bound = bound;
  std::vector<std::map<IntVector, std::size_t>> where(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    out.generators.emplace_back(g[n].begin(), g[n].end());
    for (std::size_t k = 0; k < out.generators[n].size(); ++k) where[n].emplace(out.generators[n][k], k);
    carrier->levels.emplace_back(out.generators[n].size(), Integer(0));
  }
  auto structure = [&](int from, int to, const IntMatrix& m) {
    std::vector<IntMatrix::Entry> entries;
    for (std::size_t k = 0; k < out.generators[from].size(); ++k) {
      const IntVector img = m * out.generators[from][k];
      if (is_zero(img)) continue;
      entries.push_back({where[to].at(img), k, Integer(1)});
    }
    return IntMatrix::from_triplets(out.generators[to].size(), out.generators[from].size(),
                                    std::move(entries));
  };
  for (int n = 0; n <= bound; ++n) {
    auto& f = carrier->faces.emplace_back();
    for (int i = 0; n > 0 && i <= n; ++i) f.push_back(structure(n, n - 1, a.faces[n][i]));
    auto& d = carrier->degens.emplace_back();
    for (int j = 0; n < bound && j <= n; ++j) d.push_back(structure(n, n + 1, a.degens[n][j]));
  }

  auto& rep = out.report;
  for (int n = 0; n <= bound; ++n) {
    const IntMatrix cols = IntMatrix::from_columns(a.rank(n), out.generators[n]);
    if (rank(cols) != out.generators[n].size()) {
      rep.independent = false;
      rep.failures.push_back("G^_W is linearly dependent on level " + std::to_string(n));
    }
    for (const auto& q : out.generators[n]) {
      if (!is_setlike(c, n, q)) {
        rep.restricted_is_eta = false;
        rep.failures.push_back("delta(q) != [q] for q = " + vector_string(q) + " on level " +
                               std::to_string(n));
      }
    }
  }
  for (const auto& p : w) {
    const IntMatrix cols = IntMatrix::from_columns(a.rank(p.level), out.generators[p.level]);
    if (!solve(cols, p.vector)) {
      rep.contains_w = false;
      rep.failures.push_back("p = " + vector_string(p.vector) + " on level " +
                             std::to_string(p.level) + " is not in Z G^_W");
    }
  }

  out.sub.carrier = carrier;
  out.inclusion = SAbMap{carrier, c.carrier, {}};
  for (int n = 0; n <= bound; ++n) {
    auto& row = out.sub.coaction.emplace_back();
    for (std::size_t k = 0; k < out.generators[n].size(); ++k) {
      row.push_back(FreeElement::bracket(FreeElement::basis(n, k)));
    }
    out.inclusion.components.push_back(IntMatrix::from_columns(a.rank(n), out.generators[n]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Basis recovery and basis change

RecoveredBasis recover_basis(const KCoalgebra& c, const SetlikeOptions& opts) {
  RecoveredBasis out;
  try {
    out.primitives = primitives(c, opts);
  } catch (const PreconditionError& e) {
    out.message = e.what();
    return out;
  }
  const auto& x = out.primitives.complex;
  const int bound = c.bound();
  out.canonical = can(x, bound);
  const ReducedBasis basis(x, bound);
  out.iso = SAbMap{out.canonical.carrier, c.carrier, {}};
  for (int n = 0; n <= bound; ++n) {
    std::map<SimplexRef, std::size_t> element_of;
    for (std::size_t e = 0; e < out.primitives.refs[n].size(); ++e) {
      element_of.emplace(out.primitives.refs[n][e], e);
    }
    std::vector<IntVector> cols;
    for (const auto& s : basis.level(n)) cols.push_back(out.primitives.elements[n][element_of.at(s)]);
    const IntMatrix m = IntMatrix::from_columns(c.carrier->rank(n), cols);
    const auto factors = smith_invariants(m);
    const bool unimodular = m.rows() == m.cols() && factors.size() == m.rows() &&
                            std::all_of(factors.begin(), factors.end(),
                                        [](const Integer& f) { return f == 1; });
    if (!unimodular) {
      out.message = "not in essential image at this bound: setlike elements on level " +
                    std::to_string(n) + " do not form a basis (" + std::to_string(cols.size()) +
                    " setlike, rank " + std::to_string(c.carrier->rank(n)) + ")";
      return out;
    }
    out.iso.components.push_back(m);
  }
  if (auto err = out.iso.check()) {
    out.message = "recovered iso is not simplicial: " + *err;
    return out;
  }
  // The iso intertwines coactions: delta(phi x) = [phi x] for each simplex x.
  for (int n = 0; n <= bound; ++n) {
    for (std::size_t k = 0; k < out.iso.components[n].cols(); ++k) {
      if (!is_setlike(c, n, out.iso.components[n].column(k))) {
        out.message = "recovered iso does not intertwine coactions on level " + std::to_string(n);
        return out;
      }
    }
  }
  out.ok = true;
  out.message = "ok";
  return out;
}

KCoalgebra change_basis(const KCoalgebra& c, const std::vector<IntMatrix>& change) {
  const auto& a = *c.carrier;
  if (change.size() != static_cast<std::size_t>(a.bound) + 1) {
    throw PreconditionError("change_basis: one matrix per level is required");
  }
  std::vector<IntMatrix> inv;
  for (int n = 0; n <= a.bound; ++n) {
    const IntMatrix& p = change[n];
    if (p.rows() != a.rank(n) || p.cols() != a.rank(n)) {
      throw PreconditionError("change_basis: matrix has the wrong shape");
    }
    const SystemSolver solver(p);
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < a.rank(n); ++j) {
      IntVector e(a.rank(n));
      e[j] = 1;
      auto x = solver.solve(e);
      if (!x) throw PreconditionError("change_basis: matrix is not unimodular");
      cols.push_back(std::move(*x));
    }
    inv.push_back(IntMatrix::from_columns(a.rank(n), cols));
  }
  auto carrier = std::make_shared<SimplicialAbelianGroup>();
  carrier->bound = a.bound;
  carrier->levels = a.levels;
  KCoalgebra out;
  for (int n = 0; n <= a.bound; ++n) {
    auto& f = carrier->faces.emplace_back();
    for (int i = 0; n > 0 && i <= n; ++i) f.push_back(inv[n - 1] * a.faces[n][i] * change[n]);
    auto& d = carrier->degens.emplace_back();
    for (int j = 0; n < a.bound && j <= n; ++j) d.push_back(inv[n + 1] * a.degens[n][j] * change[n]);
    auto& row = out.coaction.emplace_back();
    for (std::size_t j = 0; j < a.rank(n); ++j) {
      const FreeElement old = c.delta(n, change[n].column(j));
      row.push_back(map_atoms(old, n, 0, [&](const FreeElement& q) {
        return FreeElement::from_vector(n, inv[n] * q.to_vector(a.rank(n)));
      }));
    }
  }
  out.carrier = carrier;
  return out;
}

}  // namespace hocoalg
