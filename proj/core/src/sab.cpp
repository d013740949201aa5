#include "hocoalg/sab.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hocoalg/errors.hpp"

namespace hocoalg {

namespace {

std::string level_tag(const char* what, int n) { return std::string(what) + " at level " + std::to_string(n); }

// M sends every relation of the source into the relations of the target.
bool respects_relations(const IntMatrix& m, const Moduli& source, const Moduli& target) {
  std::vector<IntMatrix::Entry> scaled;
  for (const auto& e : m.entries()) {
    if (source[e.col] != 0) scaled.push_back({e.row, e.col, e.value * source[e.col]});
  }
  return IntMatrix::from_triplets(m.rows(), m.cols(), std::move(scaled))
      .reduced_rows(target)
      .is_zero();
}

bool has_shape(const IntMatrix& m, std::size_t rows, std::size_t cols) {
  return m.rows() == rows && m.cols() == cols;
}

IntMatrix identity_mod(const Moduli& moduli) {
  return IntMatrix::identity(moduli.size()).reduced_rows(moduli);
}

Moduli concat(const Moduli& a, const Moduli& b) {
  Moduli out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

bool equal_mod(const IntMatrix& a, const IntMatrix& b, const Moduli& target) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).reduced_rows(target).is_zero();
}

IntMatrix compose_mod(const IntMatrix& a, const IntMatrix& b, const Moduli& target) {
  return (a * b).reduced_rows(target);
}

// ---------------------------------------------------------------------------
// Checks

std::optional<std::string> SimplicialAbelianGroup::check() const {
  if (bound < 0 || levels.size() != static_cast<std::size_t>(bound) + 1 ||
      faces.size() != levels.size() || degens.size() != levels.size()) {
    return "level count does not match the bound";
  }
  for (int n = 0; n <= bound; ++n) {
    for (const auto& t : levels[n]) {
      if (t < 0 || t == 1) return level_tag("modulus must be 0 or >= 2", n);
    }
    if (faces[n].size() != (n == 0 ? 0u : static_cast<std::size_t>(n) + 1)) {
      return level_tag("wrong number of face maps", n);
    }
    if (degens[n].size() != (n == bound ? 0u : static_cast<std::size_t>(n) + 1)) {
      return level_tag("wrong number of degeneracy maps", n);
    }
    for (const auto& f : faces[n]) {
      if (!has_shape(f, rank(n - 1), rank(n))) return level_tag("face map has the wrong shape", n);
      if (!respects_relations(f, levels[n], levels[n - 1])) {
        return level_tag("face map is not well defined", n);
      }
    }
    for (const auto& s : degens[n]) {
      if (!has_shape(s, rank(n + 1), rank(n))) {
        return level_tag("degeneracy map has the wrong shape", n);
      }
      if (!respects_relations(s, levels[n], levels[n + 1])) {
        return level_tag("degeneracy map is not well defined", n);
      }
    }
  }
  for (int n = 2; n <= bound; ++n) {
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i < j; ++i) {
        if (!equal_mod(faces[n - 1][i] * faces[n][j], faces[n - 1][j - 1] * faces[n][i],
                       levels[n - 2])) {
          return "d" + std::to_string(i) + "d" + std::to_string(j) + " identity fails " +
                 level_tag("", n);
        }
      }
    }
  }
  for (int n = 0; n < bound; ++n) {
    const IntMatrix id = identity_mod(levels[n]);
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n + 1; ++i) {
        const IntMatrix lhs = faces[n + 1][i] * degens[n][j];
        IntMatrix rhs;
        if (i < j) {
          rhs = degens[n - 1][j - 1] * faces[n][i];
        } else if (i == j || i == j + 1) {
          rhs = id;
        } else {
          rhs = degens[n - 1][j] * faces[n][i - 1];
        }
        if (!equal_mod(lhs, rhs, levels[n])) {
          return "d" + std::to_string(i) + "s" + std::to_string(j) + " identity fails " +
                 level_tag("", n);
        }
      }
    }
  }
  for (int n = 0; n + 2 <= bound; ++n) {
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= j; ++i) {
        if (!equal_mod(degens[n + 1][i] * degens[n][j], degens[n + 1][j + 1] * degens[n][i],
                       levels[n + 2])) {
          return "s" + std::to_string(i) + "s" + std::to_string(j) + " identity fails " +
                 level_tag("", n);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> SAbMap::check() const {
  if (!source || !target) return "map has no source or target";
  if (bound() > std::min(source->bound, target->bound)) return "map exceeds the stored degrees";
  for (int n = 0; n <= bound(); ++n) {
    const auto& f = components[n];
    if (!has_shape(f, target->rank(n), source->rank(n))) {
      return level_tag("component has the wrong shape", n);
    }
    if (!respects_relations(f, source->levels[n], target->levels[n])) {
      return level_tag("component is not well defined", n);
    }
    for (int i = 0; n > 0 && i <= n; ++i) {
      if (!equal_mod(target->faces[n][i] * f, components[n - 1] * source->faces[n][i],
                     target->levels[n - 1])) {
        return "does not commute with d" + std::to_string(i) + " " + level_tag("", n);
      }
    }
    for (int j = 0; n < bound() && j <= n; ++j) {
      if (!equal_mod(target->degens[n][j] * f, components[n + 1] * source->degens[n][j],
                     target->levels[n + 1])) {
        return "does not commute with s" + std::to_string(j) + " " + level_tag("", n);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> ChainComplex::check() const {
  if (d.size() != terms.size()) return "differential count does not match the terms";
  for (int n = 0; n <= top(); ++n) {
    for (const auto& t : terms[n]) {
      if (t < 0 || t == 1) return "modulus must be 0 or >= 2 in degree " + std::to_string(n);
    }
    const std::size_t below = n == 0 ? 0 : terms[n - 1].size();
    if (!has_shape(d[n], below, terms[n].size())) {
      return "differential has the wrong shape in degree " + std::to_string(n);
    }
    if (n > 0 && !respects_relations(d[n], terms[n], terms[n - 1])) {
      return "differential is not well defined in degree " + std::to_string(n);
    }
    if (n > 1 && !(d[n - 1] * d[n]).reduced_rows(terms[n - 2]).is_zero()) {
      return "d o d != 0 in degree " + std::to_string(n);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Basic objects and maps

SimplicialAbelianGroup zero_sab(int bound) { return constant_sab({}, bound); }

SimplicialAbelianGroup constant_sab(const Moduli& moduli, int bound) {
  SimplicialAbelianGroup a;
  a.bound = bound;
  const IntMatrix id = identity_mod(moduli);
  for (int n = 0; n <= bound; ++n) {
    a.levels.push_back(moduli);
    a.faces.emplace_back(n == 0 ? 0 : n + 1, id);
    a.degens.emplace_back(n == bound ? 0 : n + 1, id);
  }
  return a;
}

SimplicialAbelianGroup direct_sum(const SimplicialAbelianGroup& a,
                                  const SimplicialAbelianGroup& b) {
  SimplicialAbelianGroup s;
  s.bound = std::min(a.bound, b.bound);
  for (int n = 0; n <= s.bound; ++n) {
    s.levels.push_back(concat(a.levels[n], b.levels[n]));
    auto& f = s.faces.emplace_back();
    for (int i = 0; n > 0 && i <= n; ++i) {
      f.push_back(IntMatrix::block_diag(a.faces[n][i], b.faces[n][i]));
    }
    auto& d = s.degens.emplace_back();
    for (int j = 0; n < s.bound && j <= n; ++j) {
      d.push_back(IntMatrix::block_diag(a.degens[n][j], b.degens[n][j]));
    }
  }
  return s;
}

SAbMap identity(SAbPtr a) {
  SAbMap f{a, a, {}};
  for (int n = 0; n <= a->bound; ++n) f.components.push_back(identity_mod(a->levels[n]));
  return f;
}

SAbMap zero_map(SAbPtr a, SAbPtr b) {
  SAbMap f{a, b, {}};
  for (int n = 0; n <= std::min(a->bound, b->bound); ++n) {
    f.components.emplace_back(b->rank(n), a->rank(n));
  }
  return f;
}

SAbMap compose(const SAbMap& g, const SAbMap& f) {
  SAbMap h{f.source, g.target, {}};
  for (int n = 0; n <= std::min(f.bound(), g.bound()); ++n) {
    h.components.push_back(compose_mod(g.components[n], f.components[n], g.target->levels[n]));
  }
  return h;
}

bool equal_maps(const SAbMap& f, const SAbMap& g) {
  if (f.bound() != g.bound()) return false;
  for (int n = 0; n <= f.bound(); ++n) {
    if (!equal_mod(f.components[n], g.components[n], f.target->levels[n])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free reduced abelian groups

ReducedBasis::ReducedBasis(const FiniteSimplicialSet& x, int bound) {
  for (int n = 0; n <= bound; ++n) {
    auto& b = basis_.emplace_back();
    auto& pos = pos_.emplace_back();
    for (auto& s : x.simplices(n)) {
      if (x.is_basepoint(s)) continue;
      pos.emplace(s, b.size());
      b.push_back(std::move(s));
    }
  }
}

std::optional<std::size_t> ReducedBasis::index(int n, const SimplexRef& r) const {
  const auto& pos = pos_.at(n);
  auto it = pos.find(r);
  if (it == pos.end()) return std::nullopt;
  return it->second;
}

SimplicialAbelianGroup free_reduced(const FiniteSimplicialSet& x, int bound) {
  if (bound < 0) throw PreconditionError("free_reduced: degree bound must be >= 0");
  const ReducedBasis basis(x, bound);
  SimplicialAbelianGroup a;
  a.bound = bound;
  for (int n = 0; n <= bound; ++n) a.levels.emplace_back(basis.level(n).size(), Integer(0));
  auto structure = [&](int from, int to, auto&& op) {
    std::vector<IntMatrix::Entry> entries;
    const auto& src = basis.level(from);
    for (std::size_t c = 0; c < src.size(); ++c) {
      if (auto r = basis.index(to, op(src[c]))) entries.push_back({*r, c, Integer(1)});
    }
    return IntMatrix::from_triplets(basis.level(to).size(), src.size(), std::move(entries));
  };
  for (int n = 0; n <= bound; ++n) {
    auto& f = a.faces.emplace_back();
    for (int i = 0; n > 0 && i <= n; ++i) {
      f.push_back(structure(n, n - 1, [&](const SimplexRef& s) { return x.face(s, i); }));
    }
    auto& d = a.degens.emplace_back();
    for (int j = 0; n < bound && j <= n; ++j) {
      d.push_back(structure(n, n + 1, [&](const SimplexRef& s) { return x.degeneracy(s, j); }));
    }
  }
  return a;
}

SAbMap free_reduced_map(const SSetMap& f, SAbPtr source, SAbPtr target) {
  const int bound = std::min(source->bound, target->bound);
  const ReducedBasis sb(f.source(), bound);
  const ReducedBasis tb(f.target(), bound);
  SAbMap out{source, target, {}};
  for (int n = 0; n <= bound; ++n) {
    std::vector<IntMatrix::Entry> entries;
    const auto& src = sb.level(n);
    for (std::size_t c = 0; c < src.size(); ++c) {
      if (auto r = tb.index(n, f(src[c]))) entries.push_back({*r, c, Integer(1)});
    }
    out.components.push_back(
        IntMatrix::from_triplets(tb.level(n).size(), src.size(), std::move(entries)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalized chains and homology

NormalizedChains normalized_chains(const SimplicialAbelianGroup& a) {
  NormalizedChains out;
  for (int n = 0; n <= a.bound; ++n) {
    if (n == 0) {
      out.inclusion.emplace_back(a.levels[0], IntMatrix::identity(a.rank(0)));
    } else {
      IntMatrix stacked(0, a.rank(n));
      Moduli target;
      for (int i = 1; i <= n; ++i) {
        stacked = IntMatrix::vstack(stacked, a.faces[n][i]);
        target = concat(target, a.levels[n - 1]);
      }
      out.inclusion.push_back(kernel_subgroup(a.levels[n], target, stacked));
    }
    out.complex.terms.push_back(out.inclusion.back().moduli());
  }
  for (int n = 0; n <= a.bound; ++n) {
    const auto& incl = out.inclusion[n];
    if (n == 0) {
      out.complex.d.emplace_back(0, incl.size());
    } else {
      const IntMatrix img = compose_mod(a.faces[n][0], incl.inclusion(), a.levels[n - 1]);
      out.complex.d.push_back(out.inclusion[n - 1].coordinates(img));
    }
  }
  return out;
}

ChainMap normalized_map(const SAbMap& f, const NormalizedChains& source,
                        const NormalizedChains& target) {
  ChainMap out;
  const int top = std::min({f.bound(), source.complex.top(), target.complex.top()});
  for (int n = 0; n <= top; ++n) {
    const IntMatrix img =
        compose_mod(f.components[n], source.inclusion[n].inclusion(), f.target->levels[n]);
    out.components.push_back(target.inclusion[n].coordinates(img));
  }
  return out;
}

Homology homology(const ChainComplex& c, int n) {
  Homology h;
  if (n < 0 || n > c.top()) {
    h.cycles = Subgroup({}, IntMatrix(0, 0));
    h.presentation = quotient({}, IntMatrix(0, 0));
    return h;
  }
  if (n == 0) {
    h.cycles = Subgroup(c.terms[0], IntMatrix::identity(c.terms[0].size()));
  } else {
    h.cycles = kernel_subgroup(c.terms[n], c.terms[n - 1], c.d[n]);
  }
  IntMatrix boundaries(h.cycles.size(), 0);
  if (n + 1 <= c.top()) boundaries = h.cycles.coordinates(c.d[n + 1]);
  h.presentation = quotient(h.cycles.moduli(), boundaries);
  return h;
}

IntMatrix induced_on_homology(const ChainMap& f, const ChainComplex& c, const ChainComplex& d,
                              int n) {
  const Homology hc = homology(c, n);
  const Homology hd = homology(d, n);
  if (n < 0 || n >= static_cast<int>(f.components.size())) {
    return IntMatrix(hd.presentation.moduli.size(), hc.presentation.moduli.size());
  }
  const IntMatrix reps = hc.cycles.inclusion() * hc.presentation.from_new;
  const IntMatrix images = compose_mod(f.components[n], reps, d.terms[n]);
  const IntMatrix coords = hd.cycles.coordinates(images);
  return compose_mod(hd.presentation.to_new, coords, hd.presentation.moduli);
}

AbelianGroup homotopy_group(const SimplicialAbelianGroup& a, int n) {
  if (n < 0) throw PreconditionError("homotopy_group: degree must be >= 0");
  if (n + 1 > a.bound) {
    throw PreconditionError("homotopy_group: pi_" + std::to_string(n) +
                            " needs levels up to " + std::to_string(n + 1) +
                            ", stored up to " + std::to_string(a.bound));
  }
  SimplicialAbelianGroup trimmed;
  trimmed.bound = n + 1;
  for (int k = 0; k <= n + 1; ++k) {
    trimmed.levels.push_back(a.levels[k]);
    trimmed.faces.push_back(a.faces[k]);
    trimmed.degens.push_back(k == n + 1 ? std::vector<IntMatrix>{} : a.degens[k]);
  }
  return homology(normalized_chains(trimmed).complex, n).group();
}

std::optional<int> first_pi_failure(const SAbMap& f, int n) {
  if (n + 1 > f.bound()) {
    throw PreconditionError("pi-isomorphism check needs the map stored to degree " +
                            std::to_string(n + 1));
  }
  const auto ns = normalized_chains(*f.source);
  const auto nt = normalized_chains(*f.target);
  const ChainMap nf = normalized_map(f, ns, nt);
  for (int m = 0; m <= n; ++m) {
    const IntMatrix h = induced_on_homology(nf, ns.complex, nt.complex, m);
    const Homology hs = homology(ns.complex, m);
    const Homology ht = homology(nt.complex, m);
    if (!is_isomorphism(hs.presentation.moduli, ht.presentation.moduli, h)) return m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Eilenberg-MacLane objects

SimplicialAbelianGroup eilenberg_maclane(const Moduli& g, int n, int bound) {
  if (n < 0) throw PreconditionError("eilenberg_maclane: n must be >= 0");
  Moduli gens;
  for (const auto& t : g) {
    if (t < 0) throw PreconditionError("eilenberg_maclane: negative modulus");
    if (t != 1) gens.push_back(t);
  }
  if (n == 0) return constant_sab(gens, bound);
  const SimplicialAbelianGroup s = free_reduced(sphere(n), bound);
  auto tensor = [&](const IntMatrix& m, const Moduli& target) {
    IntMatrix out(0, 0);
    for (std::size_t k = 0; k < gens.size(); ++k) out = IntMatrix::block_diag(out, m);
    return out.reduced_rows(target);
  };
  SimplicialAbelianGroup a;
  a.bound = bound;
  for (int m = 0; m <= bound; ++m) {
    Moduli level;
    for (const auto& t : gens) level.insert(level.end(), s.rank(m), t);
    a.levels.push_back(std::move(level));
  }
  for (int m = 0; m <= bound; ++m) {
    auto& f = a.faces.emplace_back();
    for (const auto& face : s.faces[m]) f.push_back(tensor(face, a.levels[m - 1]));
    auto& d = a.degens.emplace_back();
    for (const auto& deg : s.degens[m]) d.push_back(tensor(deg, a.levels[m + 1]));
  }
  return a;
}

SimplicialAbelianGroup eilenberg_maclane(const AbelianGroup& g, int n, int bound) {
  Moduli m(g.free_rank, Integer(0));
  m.insert(m.end(), g.torsion.begin(), g.torsion.end());
  return eilenberg_maclane(m, n, bound);
}

// ---------------------------------------------------------------------------
// Dold-Kan inverse

std::vector<std::vector<int>> surjections(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  const int r = n - k;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

// Summands of Gamma(C)_n.
struct GammaLevel {
  struct Summand {
    int k;
    std::vector<int> repeats;
    std::size_t offset;
  };
  std::vector<Summand> summands;
  std::map<std::vector<int>, std::size_t> lookup;  // repeats -> summand index
  Moduli moduli;
};

GammaLevel gamma_level(const ChainComplex& c, int n) {
  GammaLevel lv;
  for (int k = std::min(n, c.top()); k >= 0; --k) {
    for (auto& rep : surjections(n, k)) {
      lv.lookup.emplace(rep, lv.summands.size());
      lv.summands.push_back({k, rep, lv.moduli.size()});
      lv.moduli.insert(lv.moduli.end(), c.terms[k].begin(), c.terms[k].end());
    }
  }
  return lv;
}

std::vector<int> surjection_values(int n, const std::vector<int>& repeats) {
  std::vector<int> v(n + 1);
  int cur = 0;
  std::size_t r = 0;
  for (int j = 0; j <= n; ++j) {
    v[j] = cur;
    if (r < repeats.size() && repeats[r] == j) {
      ++r;
    } else {
      ++cur;
    }
  }
  return v;
}

// theta^* : Gamma(C)_n -> Gamma(C)_m for a monotone theta : [m] -> [n].
IntMatrix gamma_operator(const ChainComplex& c, const GammaLevel& from, const GammaLevel& to,
                         int n, const std::vector<int>& theta) {
  const int m = static_cast<int>(theta.size()) - 1;
  std::vector<IntMatrix::Entry> entries;
  for (const auto& s : from.summands) {
    const auto eta = surjection_values(n, s.repeats);
    std::vector<int> comp(m + 1);
    for (int v = 0; v <= m; ++v) comp[v] = eta[theta[v]];
    std::vector<int> repeats;
    for (int j = 0; j < m; ++j) {
      if (comp[j] == comp[j + 1]) repeats.push_back(j);
    }
    const int kk = m - static_cast<int>(repeats.size());  // size of the image minus one
    const bool onto = comp.front() == 0 && comp.back() == s.k && kk == s.k;
    const bool misses_zero = comp.front() == 1 && comp.back() == s.k && kk == s.k - 1;
    if (!onto && !misses_zero) continue;
    const auto& target = to.summands.at(to.lookup.at(repeats));
    if (onto) {
      for (std::size_t g = 0; g < c.terms[s.k].size(); ++g) {
        entries.push_back({target.offset + g, s.offset + g, Integer(1)});
      }
    } else {
      for (const auto& e : c.d[s.k].entries()) {
        entries.push_back({target.offset + e.row, s.offset + e.col, e.value});
      }
    }
  }
  return IntMatrix::from_triplets(to.moduli.size(), from.moduli.size(), std::move(entries))
      .reduced_rows(to.moduli);
}

std::vector<int> coface(int n, int i) {  // delta^i : [n-1] -> [n]
  std::vector<int> t;
  for (int v = 0; v < n; ++v) t.push_back(v < i ? v : v + 1);
  return t;
}

std::vector<int> codegeneracy(int n, int j) {  // sigma^j : [n+1] -> [n]
  std::vector<int> t;
  for (int v = 0; v <= n + 1; ++v) t.push_back(v <= j ? v : v - 1);
  return t;
}

}  // namespace

SimplicialAbelianGroup dold_kan_inverse(const ChainComplex& c, int bound) {
  if (auto err = c.check()) throw PreconditionError("dold_kan_inverse: " + *err);
  std::vector<GammaLevel> lv;
  for (int n = 0; n <= bound; ++n) lv.push_back(gamma_level(c, n));
  SimplicialAbelianGroup a;
  a.bound = bound;
  for (int n = 0; n <= bound; ++n) {
    a.levels.push_back(lv[n].moduli);
    auto& f = a.faces.emplace_back();
    for (int i = 0; n > 0 && i <= n; ++i) {
      f.push_back(gamma_operator(c, lv[n], lv[n - 1], n, coface(n, i)));
    }
    auto& d = a.degens.emplace_back();
    for (int j = 0; n < bound && j <= n; ++j) {
      d.push_back(gamma_operator(c, lv[n], lv[n + 1], n, codegeneracy(n, j)));
    }
  }
  return a;
}

SAbMap dold_kan_inverse_map(const ChainMap& f, const ChainComplex& c, const ChainComplex& d,
                            SAbPtr gc, SAbPtr gd) {
  SAbMap out{gc, gd, {}};
  const int bound = std::min(gc->bound, gd->bound);
  for (int n = 0; n <= bound; ++n) {
    const GammaLevel from = gamma_level(c, n);
    const GammaLevel to = gamma_level(d, n);
    std::vector<IntMatrix::Entry> entries;
    for (const auto& s : from.summands) {
      auto it = to.lookup.find(s.repeats);
      if (it == to.lookup.end() || s.k >= static_cast<int>(f.components.size())) continue;
      const auto& t = to.summands[it->second];
      for (const auto& e : f.components[s.k].entries()) {
        entries.push_back({t.offset + e.row, s.offset + e.col, e.value});
      }
    }
    out.components.push_back(
        IntMatrix::from_triplets(to.moduli.size(), from.moduli.size(), std::move(entries))
            .reduced_rows(to.moduli));
  }
  return out;
}

SAbMap dold_kan_counit(SAbPtr a, const NormalizedChains& na, SAbPtr gamma_na) {
  SAbMap out{gamma_na, a, {}};
  const int bound = std::min(a->bound, gamma_na->bound);
  for (int n = 0; n <= bound; ++n) {
    const GammaLevel lv = gamma_level(na.complex, n);
    IntMatrix m(a->rank(n), 0);
    for (const auto& s : lv.summands) {
      // eta^* is s_{j} applied for the repeated positions j in increasing order.
      IntMatrix block = na.inclusion[s.k].inclusion();
      int level = s.k;
      for (int j : s.repeats) {
        block = a->degens[level][j] * block;
        ++level;
      }
      m = IntMatrix::hstack(m, block);
    }
    out.components.push_back(m.reduced_rows(a->levels[n]));
  }
  return out;
}

SAbMap inverse(const SAbMap& f) {
  SAbMap out{f.target, f.source, {}};
  for (int n = 0; n <= f.bound(); ++n) {
    const Moduli& sm = f.source->levels[n];
    const Moduli& tm = f.target->levels[n];
    const IntMatrix& m = f.components[n];
    if (!is_isomorphism(sm, tm, m)) {
      throw PreconditionError("inverse: component " + level_tag("is not invertible", n));
    }
    const SystemSolver solver(IntMatrix::hstack(m, relation_matrix(tm)));
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < tm.size(); ++j) {
      IntVector e(tm.size());
      e[j] = 1;
      auto x = solver.solve(e);
      if (!x) throw PreconditionError("inverse: component " + level_tag("is not onto", n));
      x->resize(sm.size());
      cols.push_back(reduced(*x, sm));
    }
    out.components.push_back(IntMatrix::from_columns(sm.size(), cols));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Path objects, fibrations, pullbacks, truncations

PathObject path_object(SAbPtr a) {
  const NormalizedChains na = normalized_chains(*a);
  const ChainComplex& c = na.complex;
  const int top = c.top() - 1;
  if (top < 0) throw PreconditionError("path_object: needs the input stored to degree >= 1");

  ChainComplex p;
  ChainMap proj;
  for (int n = 0; n <= top; ++n) {
    if (n == 0) {
      p.terms.push_back(c.terms[1]);
      p.d.emplace_back(0, c.terms[1].size());
      proj.components.push_back(c.d[1]);
      continue;
    }
    const std::size_t an = c.terms[n].size();
    const std::size_t bn = c.terms[n + 1].size();
    p.terms.push_back(concat(c.terms[n], c.terms[n + 1]));
    const IntMatrix id = IntMatrix::identity(an);
    if (n == 1) {
      p.d.push_back(IntMatrix::hstack(id, -c.d[2]).reduced_rows(c.terms[1]));
    } else {
      const IntMatrix top_row = IntMatrix::hstack(c.d[n], IntMatrix(c.terms[n - 1].size(), bn));
      const IntMatrix bottom_row = IntMatrix::hstack(id, -c.d[n + 1]);
      p.d.push_back(IntMatrix::vstack(top_row, bottom_row).reduced_rows(p.terms[n - 1]));
    }
    proj.components.push_back(IntMatrix::hstack(id, IntMatrix(an, bn)).reduced_rows(c.terms[n]));
  }

  auto gp = std::make_shared<const SimplicialAbelianGroup>(dold_kan_inverse(p, top));
  auto gc = std::make_shared<const SimplicialAbelianGroup>(dold_kan_inverse(c, top));
  const SAbMap gproj = dold_kan_inverse_map(proj, p, c, gp, gc);
  const SAbMap counit = dold_kan_counit(a, na, gc);
  return PathObject{gp, compose(counit, gproj)};
}

std::vector<int> fibration_failures(const SAbMap& f) {
  const auto ns = normalized_chains(*f.source);
  const auto nt = normalized_chains(*f.target);
  const ChainMap nf = normalized_map(f, ns, nt);
  std::vector<int> out;
  for (int n = 1; n < static_cast<int>(nf.components.size()); ++n) {
    if (!is_surjective(nt.complex.terms[n], nf.components[n])) out.push_back(n);
  }
  return out;
}

bool is_fibration(const SAbMap& f) { return fibration_failures(f).empty(); }

Pullback pullback(const SAbMap& f, const SAbMap& g) {
  if (f.target != g.target) {
    if (!f.target || !g.target || f.target->levels != g.target->levels) {
      throw PreconditionError("pullback: maps have different targets");
    }
  }
  const auto& A = *f.source;
  const auto& B = *g.source;
  const auto& C = *f.target;
  const int bound = std::min(f.bound(), g.bound());
  Pullback out;
  auto obj = std::make_shared<SimplicialAbelianGroup>();
  obj->bound = bound;
  for (int n = 0; n <= bound; ++n) {
    const IntMatrix diff = IntMatrix::hstack(f.components[n], -g.components[n]);
    out.levels.push_back(kernel_subgroup(concat(A.levels[n], B.levels[n]), C.levels[n], diff));
    obj->levels.push_back(out.levels.back().moduli());
  }
  for (int n = 0; n <= bound; ++n) {
    const Subgroup& here = out.levels[n];
    auto& fc = obj->faces.emplace_back();
    for (int i = 0; n > 0 && i <= n; ++i) {
      const IntMatrix s = IntMatrix::block_diag(A.faces[n][i], B.faces[n][i]);
      fc.push_back(out.levels[n - 1].coordinates(
          compose_mod(s, here.inclusion(), out.levels[n - 1].ambient_moduli())));
    }
    auto& dg = obj->degens.emplace_back();
    for (int j = 0; n < bound && j <= n; ++j) {
      const IntMatrix s = IntMatrix::block_diag(A.degens[n][j], B.degens[n][j]);
      dg.push_back(out.levels[n + 1].coordinates(
          compose_mod(s, here.inclusion(), out.levels[n + 1].ambient_moduli())));
    }
  }
  out.object = obj;
  out.to_left = SAbMap{obj, f.source, {}};
  out.to_right = SAbMap{obj, g.source, {}};
  for (int n = 0; n <= bound; ++n) {
    const IntMatrix& incl = out.levels[n].inclusion();
    std::vector<std::size_t> top(A.rank(n)), bottom(B.rank(n));
    for (std::size_t k = 0; k < top.size(); ++k) top[k] = k;
    for (std::size_t k = 0; k < bottom.size(); ++k) bottom[k] = A.rank(n) + k;
    out.to_left.components.push_back(incl.select_rows(top));
    out.to_right.components.push_back(incl.select_rows(bottom));
  }
  return out;
}

Truncation postnikov_truncation(SAbPtr a, int n) {
  if (n < 0) throw PreconditionError("postnikov_truncation: n must be >= 0");
  const NormalizedChains na = normalized_chains(*a);
  const ChainComplex& c = na.complex;
  ChainComplex tau;
  ChainMap q;
  for (int k = 0; k <= std::min(n, c.top()); ++k) {
    if (k < n || k == c.top()) {
      tau.terms.push_back(c.terms[k]);
      tau.d.push_back(c.d[k]);
      q.components.push_back(identity_mod(c.terms[k]));
      continue;
    }
    const DiagonalForm quo = quotient(c.terms[k], c.d[k + 1]);
    tau.terms.push_back(quo.moduli);
    tau.d.push_back(k == 0 ? IntMatrix(0, quo.moduli.size())
                           : compose_mod(c.d[k], quo.from_new, c.terms[k - 1]));
    q.components.push_back(quo.to_new);
  }
  for (int k = n + 1; k <= c.top(); ++k) q.components.emplace_back(0, c.terms[k].size());

  auto gc = std::make_shared<const SimplicialAbelianGroup>(dold_kan_inverse(c, a->bound));
  auto gt = std::make_shared<const SimplicialAbelianGroup>(dold_kan_inverse(tau, a->bound));
  const SAbMap counit = dold_kan_counit(a, na, gc);
  const SAbMap gq = dold_kan_inverse_map(q, c, tau, gc, gt);
  return Truncation{gt, compose(gq, inverse(counit))};
}

}  // namespace hocoalg
