#include "hocoalg/sset.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hocoalg/errors.hpp"

namespace hocoalg {

namespace {

bool is_strictly_decreasing(const std::vector<int>& w) {
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k - 1] <= w[k]) return false;
  }
  return true;
}

// Decreasing words of length k over {0, ..., n-1}, in decreasing
// lexicographic order.
void decreasing_words(int n, int k, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  const int remaining = k - static_cast<int>(cur.size());
  const int top = cur.empty() ? n - 1 : cur.back() - 1;
  for (int v = top; v >= remaining - 1; --v) {
    cur.push_back(v);
    decreasing_words(n, k, cur, out);
    cur.pop_back();
  }
}

std::string unique_id(std::string id, const std::set<std::string>& taken) {
  while (taken.count(id)) id += "'";
  return id;
}

}  // namespace

std::vector<int> degenerate_word(const std::vector<int>& word, int j) {
  std::vector<int> out;
  out.reserve(word.size() + 1);
  for (int i : word) {
    if (i >= j) out.push_back(i + 1);
  }
  out.push_back(j);
  for (int i : word) {
    if (i < j) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// FiniteSimplicialSet

FiniteSimplicialSet::FiniteSimplicialSet(std::vector<Generator> generators,
                                         std::size_t basepoint)
    : gens_(std::move(generators)), basepoint_(basepoint) {
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (!index_.emplace(gens_[g].id, g).second) {
      throw InputError("duplicate generator id '" + gens_[g].id + "'");
    }
    max_dim_ = std::max(max_dim_, gens_[g].dim);
  }
  validate();
}

FiniteSimplicialSet FiniteSimplicialSet::from_ids(std::vector<Generator> generators,
                                                  const std::string& basepoint) {
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].id == basepoint) return FiniteSimplicialSet(std::move(generators), g);
  }
  throw InputError("basepoint '" + basepoint + "' is not a generator");
}

void FiniteSimplicialSet::validate() const {
  if (basepoint_ >= gens_.size()) throw InputError("basepoint out of range");
  if (gens_[basepoint_].dim != 0) throw InputError("basepoint must have dimension 0");
  for (const auto& g : gens_) {
    if (g.dim < 0) throw InputError("generator '" + g.id + "' has negative dimension");
    const std::size_t expected = g.dim == 0 ? 0 : static_cast<std::size_t>(g.dim) + 1;
    if (g.faces.size() != expected) {
      throw InputError("generator '" + g.id + "' needs " + std::to_string(expected) +
                       " faces, got " + std::to_string(g.faces.size()));
    }
    for (const auto& f : g.faces) {
      if (f.gen >= gens_.size()) throw InputError("face of '" + g.id + "' is dangling");
      if (!is_strictly_decreasing(f.degens)) {
        throw InputError("face of '" + g.id + "' has a non-decreasing degeneracy word");
      }
      const int base = gens_[f.gen].dim;
      for (std::size_t k = 0; k < f.degens.size(); ++k) {
        // Index applied at position k (from the inside) acts on dimension base + k.
        const int idx = f.degens[f.degens.size() - 1 - k];
        if (idx < 0 || idx > base + static_cast<int>(k)) {
          throw InputError("face of '" + g.id + "' has an out-of-range degeneracy index");
        }
      }
      if (dim(f) != g.dim - 1) {
        throw InputError("face of '" + g.id + "' has the wrong dimension");
      }
    }
  }
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    const int n = gens_[g].dim;
    const SimplexRef s{g, {}};
    for (int j = 1; j <= n && n >= 2; ++j) {
      for (int i = 0; i < j; ++i) {
        if (face(face(s, j), i) != face(face(s, i), j - 1)) {
          throw InputError("simplicial identity d" + std::to_string(i) + "d" +
                           std::to_string(j) + " = d" + std::to_string(j - 1) + "d" +
                           std::to_string(i) + " fails on '" + gens_[g].id + "'");
        }
      }
    }
  }
}

std::optional<std::size_t> FiniteSimplicialSet::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FiniteSimplicialSet::dim(const SimplexRef& r) const {
  return gens_.at(r.gen).dim + static_cast<int>(r.degens.size());
}

SimplexRef FiniteSimplicialSet::basepoint_at(int n) const {
  SimplexRef r{basepoint_, {}};
  for (int k = n - 1; k >= 0; --k) r.degens.push_back(k);
  return r;
}

SimplexRef FiniteSimplicialSet::degeneracy(const SimplexRef& r, int j) const {
  if (j < 0 || j > dim(r)) throw std::out_of_range("degeneracy index out of range");
  return SimplexRef{r.gen, degenerate_word(r.degens, j)};
}

SimplexRef FiniteSimplicialSet::face(const SimplexRef& r, int i) const {
  const int n = dim(r);
  if (n == 0 || i < 0 || i > n) throw std::out_of_range("face index out of range");
  std::vector<int> prefix;
  SimplexRef result;
  bool cancelled = false;
  for (std::size_t pos = 0; pos < r.degens.size(); ++pos) {
    const int j = r.degens[pos];
    if (i < j) {
      prefix.push_back(j - 1);
    } else if (i == j || i == j + 1) {
      result = SimplexRef{r.gen, std::vector<int>(r.degens.begin() + pos + 1, r.degens.end())};
      cancelled = true;
      break;
    } else {
      prefix.push_back(j);
      --i;
    }
  }
  if (!cancelled) result = gens_[r.gen].faces[i];
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    result.degens = degenerate_word(result.degens, *it);
  }
  return result;
}

SimplexRef FiniteSimplicialSet::apply_operator(const SimplexRef& r,
                                               const std::vector<int>& theta) const {
  const int n = dim(r);
  std::vector<char> hit(n + 1, 0);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (theta[k] < 0 || theta[k] > n || (k && theta[k] < theta[k - 1])) {
      throw std::invalid_argument("apply_operator: theta is not monotone into [n]");
    }
    hit[theta[k]] = 1;
  }
  SimplexRef out = r;
  for (int v = n; v >= 0; --v) {
    if (!hit[v]) out = face(out, v);
  }
  for (std::size_t j = 0; j + 1 < theta.size(); ++j) {
    if (theta[j] == theta[j + 1]) out = degeneracy(out, static_cast<int>(j));
  }
  return out;
}

std::vector<SimplexRef> FiniteSimplicialSet::simplices(int n) const {
  std::vector<SimplexRef> out;
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    const int m = gens_[g].dim;
    if (m > n) continue;
    std::vector<std::vector<int>> words;
    std::vector<int> cur;
    decreasing_words(n, n - m, cur, words);
    for (auto& w : words) out.push_back(SimplexRef{g, std::move(w)});
  }
  return out;
}

std::size_t FiniteSimplicialSet::count(int n) const {
  std::size_t total = 0;
  for (const auto& g : gens_) {
    if (g.dim > n) continue;
    // C(n, dim)
    std::size_t c = 1;
    for (int k = 1; k <= g.dim; ++k) c = c * static_cast<std::size_t>(n - g.dim + k) / k;
    total += c;
  }
  return total;
}

std::vector<std::size_t> FiniteSimplicialSet::generators_of_dim(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (gens_[g].dim == n) out.push_back(g);
  }
  return out;
}

std::string FiniteSimplicialSet::label(const SimplexRef& r) const {
  std::string out;
  for (int d : r.degens) out += "s" + std::to_string(d);
  if (!out.empty()) out += ".";
  return out + gens_.at(r.gen).id;
}

// ---------------------------------------------------------------------------
// LevelIndex

LevelIndex::LevelIndex(const FiniteSimplicialSet& x, int max_level) {
  for (int n = 0; n <= max_level; ++n) {
    levels_.push_back(x.simplices(n));
    auto& pos = pos_.emplace_back();
    for (std::size_t k = 0; k < levels_.back().size(); ++k) pos.emplace(levels_.back()[k], k);
  }
}

std::size_t LevelIndex::index(int n, const SimplexRef& r) const {
  const auto& pos = pos_.at(n);
  auto it = pos.find(r);
  if (it == pos.end()) throw std::out_of_range("LevelIndex: simplex not at this level");
  return it->second;
}

// ---------------------------------------------------------------------------
// Maps

SSetMap::SSetMap(std::shared_ptr<const FiniteSimplicialSet> source,
                 std::shared_ptr<const FiniteSimplicialSet> target,
                 std::vector<SimplexRef> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  const auto& x = *source_;
  const auto& y = *target_;
  if (assignment_.size() != x.num_generators()) {
    throw InputError("map assignment must cover every source generator");
  }
  for (std::size_t g = 0; g < assignment_.size(); ++g) {
    const auto& img = assignment_[g];
    if (img.gen >= y.num_generators() || !is_strictly_decreasing(img.degens)) {
      throw InputError("map image of '" + x.generator(g).id + "' is not a target simplex");
    }
    if (y.dim(img) != x.generator(g).dim) {
      throw InputError("map image of '" + x.generator(g).id + "' has the wrong dimension");
    }
  }
  if (assignment_[x.basepoint()] != y.basepoint_at(0)) {
    throw InputError("map does not preserve the basepoint");
  }
  for (std::size_t g = 0; g < assignment_.size(); ++g) {
    const auto& gen = x.generator(g);
    for (int i = 0; i < static_cast<int>(gen.faces.size()); ++i) {
      if (y.face(assignment_[g], i) != (*this)(gen.faces[i])) {
        throw InputError("map does not commute with d" + std::to_string(i) + " on '" +
                         gen.id + "'");
      }
    }
  }
}

SimplexRef SSetMap::operator()(const SimplexRef& r) const {
  SimplexRef out = assignment_.at(r.gen);
  for (auto it = r.degens.rbegin(); it != r.degens.rend(); ++it) {
    out.degens = degenerate_word(out.degens, *it);
  }
  return out;
}

SSetMap identity_map(std::shared_ptr<const FiniteSimplicialSet> x) {
  std::vector<SimplexRef> a;
  for (std::size_t g = 0; g < x->num_generators(); ++g) a.push_back({g, {}});
  return SSetMap(x, x, std::move(a));
}

SSetMap compose(const SSetMap& g, const SSetMap& f) {
  std::vector<SimplexRef> a;
  for (const auto& img : f.assignment()) a.push_back(g(img));
  return SSetMap(f.source_ptr(), g.target_ptr(), std::move(a));
}

// ---------------------------------------------------------------------------
// Basic complexes

FiniteSimplicialSet point() { return FiniteSimplicialSet({Generator{"*", 0, {}}}, 0); }

namespace {

std::string subset_id(const std::vector<int>& s) {
  std::string out = "[";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "]";
}

FiniteSimplicialSet simplex_complex(int n, bool proper_only) {
  std::vector<std::vector<int>> subsets;
  for (int size = 1; size <= n + 1; ++size) {
    if (proper_only && size == n + 1) break;
    std::vector<int> sel(n + 1, 0);
    std::fill(sel.begin(), sel.begin() + size, 1);
    std::vector<std::vector<int>> level;
    do {
      std::vector<int> s;
      for (int v = 0; v <= n; ++v) {
        if (sel[v]) s.push_back(v);
      }
      level.push_back(s);
    } while (std::prev_permutation(sel.begin(), sel.end()));
    std::sort(level.begin(), level.end());
    subsets.insert(subsets.end(), level.begin(), level.end());
  }
  std::map<std::vector<int>, std::size_t> where;
  for (std::size_t k = 0; k < subsets.size(); ++k) where[subsets[k]] = k;
  std::vector<Generator> gens;
  for (const auto& s : subsets) {
    Generator g{subset_id(s), static_cast<int>(s.size()) - 1, {}};
    if (s.size() > 1) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto f = s;
        f.erase(f.begin() + i);
        g.faces.push_back(SimplexRef{where.at(f), {}});
      }
    }
    gens.push_back(std::move(g));
  }
  return FiniteSimplicialSet(std::move(gens), 0);
}

}  // namespace

FiniteSimplicialSet standard_simplex(int n) {
  if (n < 0) throw PreconditionError("standard_simplex: n must be >= 0");
  return simplex_complex(n, false);
}

FiniteSimplicialSet boundary(int n) {
  if (n < 1) throw PreconditionError("boundary: n must be >= 1");
  return simplex_complex(n, true);
}

FiniteSimplicialSet sphere(int n) {
  if (n < 1) throw PreconditionError("sphere: n must be >= 1");
  SimplexRef base{0, {}};
  for (int k = n - 2; k >= 0; --k) base.degens.push_back(k);
  Generator cell{"e" + std::to_string(n), n, std::vector<SimplexRef>(n + 1, base)};
  return FiniteSimplicialSet({Generator{"*", 0, {}}, std::move(cell)}, 0);
}

std::vector<int> simplex_vertices(const FiniteSimplicialSet& delta, const SimplexRef& r) {
  const std::string& id = delta.generator(r.gen).id;
  if (id.empty() || id.front() != '[') {
    throw PreconditionError("simplex_vertices: " + id + " is not a simplex of a standard simplex");
  }
  std::vector<int> v;
  std::size_t pos = 1;
  while (pos < id.size() && id[pos] != ']') {
    std::size_t used = 0;
    v.push_back(std::stoi(id.substr(pos), &used));
    pos += used;
    if (pos < id.size() && id[pos] == ',') ++pos;
  }
  for (auto it = r.degens.rbegin(); it != r.degens.rend(); ++it) v.insert(v.begin() + *it, v[*it]);
  return v;
}

SimplexRef simplex_with_vertices(const FiniteSimplicialSet& delta, const std::vector<int>& v) {
  std::string id = "[";
  std::vector<int> word;
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (p > 0 && v[p] < v[p - 1]) throw PreconditionError("simplex_with_vertices: not monotone");
    if (p > 0 && v[p] == v[p - 1]) {
      word.insert(word.begin(), static_cast<int>(p) - 1);
      continue;
    }
    id += (id.size() > 1 ? "," : "") + std::to_string(v[p]);
  }
  const auto g = delta.find(id + "]");
  if (!g) throw PreconditionError("simplex_with_vertices: no simplex " + id + "]");
  return SimplexRef{*g, std::move(word)};
}

std::vector<int> coface_operator(int n, int i) {
  std::vector<int> theta;
  for (int v = 0; v <= n; ++v) {
    if (v != i) theta.push_back(v);
  }
  return theta;
}

std::vector<int> codegeneracy_operator(int n, int j) {
  std::vector<int> theta;
  for (int v = 0; v <= n + 1; ++v) theta.push_back(v <= j ? v : v - 1);
  return theta;
}

FiniteSimplicialSet add_basepoint(const FiniteSimplicialSet& x) {
  std::set<std::string> taken;
  for (const auto& g : x.generators()) taken.insert(g.id);
  std::vector<Generator> gens{Generator{unique_id("+", taken), 0, {}}};
  for (const auto& g : x.generators()) {
    Generator h = g;
    for (auto& f : h.faces) ++f.gen;
    gens.push_back(std::move(h));
  }
  return FiniteSimplicialSet(std::move(gens), 0);
}

// ---------------------------------------------------------------------------
// Products and smash products

namespace {

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  // Both strictly decreasing.
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] > b[j]) ++i; else ++j;
  }
  return true;
}

std::optional<int> max_common(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return a[i];
    if (a[i] > b[j]) ++i; else ++j;
  }
  return std::nullopt;
}

}  // namespace

ProductComplex::ProductComplex(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y,
                               std::optional<int> max_dim)
    : x_(x), y_(y) {
  const int top = max_dim ? std::min(*max_dim, x.max_dim() + y.max_dim())
                          : x.max_dim() + y.max_dim();
  std::vector<Generator> gens;
  for (int n = 0; n <= top; ++n) {
    const auto xs = x_.simplices(n);
    const auto ys = y_.simplices(n);
    for (const auto& a : xs) {
      for (const auto& b : ys) {
        if (!disjoint(a.degens, b.degens)) continue;
        Generator g{"(" + x_.label(a) + "," + y_.label(b) + ")", n, {}};
        if (n > 0) {
          for (int i = 0; i <= n; ++i) g.faces.push_back(pair(x_.face(a, i), y_.face(b, i)));
        }
        lookup_.emplace(std::make_pair(a, b), gens.size());
        comps_.emplace_back(a, b);
        gens.push_back(std::move(g));
      }
    }
  }
  const std::size_t bp =
      lookup_.at({x_.basepoint_at(0), y_.basepoint_at(0)});
  prod_ = FiniteSimplicialSet(std::move(gens), bp);
}

SimplexRef ProductComplex::pair(const SimplexRef& x, const SimplexRef& y) const {
  if (x_.dim(x) != y_.dim(y)) throw std::invalid_argument("product pair: dimension mismatch");
  SimplexRef a = x, b = y;
  std::vector<int> stripped;
  while (auto j = max_common(a.degens, b.degens)) {
    a = x_.face(a, *j);
    b = y_.face(b, *j);
    stripped.push_back(*j);
  }
  auto it = lookup_.find({a, b});
  if (it == lookup_.end()) {
    throw std::out_of_range("product pair: beyond the computed dimension bound");
  }
  return SimplexRef{it->second, std::move(stripped)};
}

std::pair<SimplexRef, SimplexRef> ProductComplex::components(const SimplexRef& p) const {
  auto [a, b] = comps_.at(p.gen);
  for (auto it = p.degens.rbegin(); it != p.degens.rend(); ++it) {
    a.degens = degenerate_word(a.degens, *it);
    b.degens = degenerate_word(b.degens, *it);
  }
  return {a, b};
}

namespace {

struct QuotientResult {
  FiniteSimplicialSet complex;
  std::vector<std::size_t> to_new;  // SIZE_MAX for collapsed generators
};

QuotientResult quotient_impl(const FiniteSimplicialSet& x, std::vector<char> collapse) {
  collapse[x.basepoint()] = 1;
  for (std::size_t g = 0; g < x.num_generators(); ++g) {
    if (!collapse[g]) continue;
    for (const auto& f : x.generator(g).faces) {
      if (!collapse[f.gen]) {
        throw PreconditionError("quotient: collapsed set is not a subcomplex (face of '" +
                                x.generator(g).id + "')");
      }
    }
  }
  std::set<std::string> taken;
  for (std::size_t g = 0; g < x.num_generators(); ++g) {
    if (!collapse[g]) taken.insert(x.generator(g).id);
  }
  QuotientResult out;
  out.to_new.assign(x.num_generators(), static_cast<std::size_t>(-1));
  std::vector<Generator> gens{Generator{unique_id("*", taken), 0, {}}};
  for (std::size_t g = 0; g < x.num_generators(); ++g) {
    if (!collapse[g]) out.to_new[g] = gens.size(), gens.push_back(x.generator(g));
  }
  for (auto& gen : gens) {
    for (auto& f : gen.faces) {
      if (collapse[f.gen]) {
        const int d = gen.dim - 1;
        f = SimplexRef{0, {}};
        for (int k = d - 1; k >= 0; --k) f.degens.push_back(k);
      } else {
        f.gen = out.to_new[f.gen];
      }
    }
  }
  out.complex = FiniteSimplicialSet(std::move(gens), 0);
  return out;
}

}  // namespace

SmashComplex::SmashComplex(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y,
                           std::optional<int> max_dim)
    : prod_(x, y, max_dim) {
  const auto& p = prod_.complex();
  std::vector<char> in_wedge(p.num_generators(), 0);
  for (std::size_t g = 0; g < p.num_generators(); ++g) {
    auto [a, b] = prod_.components(SimplexRef{g, {}});
    in_wedge[g] = (a.gen == x.basepoint() || b.gen == y.basepoint()) ? 1 : 0;
  }
  auto q = quotient_impl(p, in_wedge);
  smash_ = std::move(q.complex);
  to_smash_ = std::move(q.to_new);
  from_smash_.assign(smash_.num_generators(), static_cast<std::size_t>(-1));
  for (std::size_t g = 0; g < to_smash_.size(); ++g) {
    if (to_smash_[g] != static_cast<std::size_t>(-1)) from_smash_[to_smash_[g]] = g;
  }
}

SimplexRef SmashComplex::pair(const SimplexRef& x, const SimplexRef& y) const {
  const int n = prod_.left().dim(x);
  if (x.gen == prod_.left().basepoint() || y.gen == prod_.right().basepoint()) {
    return smash_.basepoint_at(n);
  }
  SimplexRef p = prod_.pair(x, y);
  const std::size_t g = to_smash_[p.gen];
  if (g == static_cast<std::size_t>(-1)) return smash_.basepoint_at(n);
  return SimplexRef{g, std::move(p.degens)};
}

std::optional<std::pair<SimplexRef, SimplexRef>> SmashComplex::components(
    const SimplexRef& s) const {
  if (s.gen == smash_.basepoint()) return std::nullopt;
  return prod_.components(SimplexRef{from_smash_.at(s.gen), s.degens});
}

FiniteSimplicialSet product(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y) {
  return ProductComplex(x, y).complex();
}

FiniteSimplicialSet smash(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y) {
  return SmashComplex(x, y).complex();
}

FiniteSimplicialSet wedge(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y) {
  std::set<std::string> taken;
  std::vector<Generator> gens = x.generators();
  for (const auto& g : gens) taken.insert(g.id);
  std::vector<std::size_t> remap(y.num_generators());
  remap[y.basepoint()] = x.basepoint();
  for (std::size_t g = 0; g < y.num_generators(); ++g) {
    if (g == y.basepoint()) continue;
    remap[g] = gens.size();
    Generator h = y.generator(g);
    h.id = unique_id(h.id, taken);
    taken.insert(h.id);
    gens.push_back(std::move(h));
  }
  for (std::size_t g = x.num_generators(); g < gens.size(); ++g) {
    for (auto& f : gens[g].faces) f.gen = remap[f.gen];
  }
  return FiniteSimplicialSet(std::move(gens), x.basepoint());
}

SSetMap smash_maps(const SSetMap& f, const SSetMap& g,
                   std::shared_ptr<const SmashComplex> source,
                   std::shared_ptr<const SmashComplex> target) {
  const auto& s = source->complex();
  std::vector<SimplexRef> a(s.num_generators());
  for (std::size_t k = 0; k < s.num_generators(); ++k) {
    auto comps = source->components(SimplexRef{k, {}});
    a[k] = comps ? target->pair(f(comps->first), g(comps->second))
                 : target->complex().basepoint_at(0);
  }
  auto sp = std::shared_ptr<const FiniteSimplicialSet>(source, &source->complex());
  auto tp = std::shared_ptr<const FiniteSimplicialSet>(target, &target->complex());
  return SSetMap(sp, tp, std::move(a));
}

FiniteSimplicialSet quotient(const FiniteSimplicialSet& x, const std::vector<std::size_t>& a) {
  std::vector<char> collapse(x.num_generators(), 0);
  for (std::size_t g : a) collapse.at(g) = 1;
  return quotient_impl(x, std::move(collapse)).complex;
}

// ---------------------------------------------------------------------------
// Subcomplexes, equalizers, mapping spaces

Subcomplex subcomplex_generated(std::shared_ptr<const FiniteSimplicialSet> x,
                                const std::vector<SimplexRef>& s) {
  std::vector<char> in(x->num_generators(), 0);
  std::vector<std::size_t> stack{x->basepoint()};
  for (const auto& r : s) stack.push_back(r.gen);
  while (!stack.empty()) {
    const std::size_t g = stack.back();
    stack.pop_back();
    if (in.at(g)) continue;
    in[g] = 1;
    for (const auto& f : x->generator(g).faces) stack.push_back(f.gen);
  }
  Subcomplex out;
  std::vector<std::size_t> remap(x->num_generators(), 0);
  for (std::size_t g = 0; g < x->num_generators(); ++g) {
    if (in[g]) remap[g] = out.generators.size(), out.generators.push_back(g);
  }
  std::vector<Generator> gens;
  std::vector<SimplexRef> incl;
  for (std::size_t g : out.generators) {
    Generator h = x->generator(g);
    for (auto& f : h.faces) f.gen = remap[f.gen];
    gens.push_back(std::move(h));
    incl.push_back(SimplexRef{g, {}});
  }
  out.complex = std::make_shared<const FiniteSimplicialSet>(std::move(gens), remap[x->basepoint()]);
  out.inclusion = SSetMap(out.complex, x, std::move(incl));
  return out;
}

Subcomplex equalizer(const SSetMap& f, const SSetMap& g) {
  if (f.source().num_generators() != g.source().num_generators() ||
      f.target().num_generators() != g.target().num_generators()) {
    throw PreconditionError("equalizer: maps are not parallel");
  }
  std::vector<SimplexRef> agree;
  for (std::size_t k = 0; k < f.source().num_generators(); ++k) {
    if (f.assignment()[k] == g.assignment()[k]) agree.push_back(SimplexRef{k, {}});
  }
  return subcomplex_generated(f.source_ptr(), agree);
}

std::vector<SSetMap> enumerate_maps(std::shared_ptr<const FiniteSimplicialSet> x,
                                    std::shared_ptr<const FiniteSimplicialSet> y) {
  // Generators in dimension order, except that a generator is visited as soon
  // as all of its faces are assigned. Basepoint fixed.
  const std::size_t ng = x->num_generators();
  std::vector<std::vector<std::size_t>> cofaces(ng);
  std::vector<std::size_t> missing(ng, 0);
  for (std::size_t g = 0; g < ng; ++g) {
    std::set<std::size_t> below;
    for (const auto& f : x->generator(g).faces) below.insert(f.gen);
    missing[g] = below.size();
    for (std::size_t f : below) cofaces[f].push_back(g);
  }
  std::vector<std::size_t> order;
  std::vector<bool> placed(ng, false);
  std::function<void(std::size_t)> place = [&](std::size_t g) {
    placed[g] = true;
    if (g != x->basepoint()) order.push_back(g);
    for (std::size_t h : cofaces[g]) {
      if (--missing[h] == 0 && !placed[h]) place(h);
    }
  };
  place(x->basepoint());
  for (int n = 0; n <= x->max_dim(); ++n) {
    for (std::size_t g : x->generators_of_dim(n)) {
      if (!placed[g]) place(g);
    }
  }
  // Target simplices of each level with their face tuples, and grouped by them.
  std::vector<std::vector<std::pair<std::vector<SimplexRef>, SimplexRef>>> level(x->max_dim() + 1);
  std::vector<std::map<std::vector<SimplexRef>, std::vector<SimplexRef>>> by_faces(x->max_dim() + 1);
  for (int n = 0; n <= x->max_dim(); ++n) {
    for (auto& s : y->simplices(n)) {
      std::vector<SimplexRef> key;
      for (int i = 0; n > 0 && i <= n; ++i) key.push_back(y->face(s, i));
      by_faces[n][key].push_back(s);
      level[n].emplace_back(std::move(key), std::move(s));
    }
  }

  std::vector<SimplexRef> assign(ng);
  std::vector<bool> assigned(ng, false);
  assign[x->basepoint()] = y->basepoint_at(0);
  assigned[x->basepoint()] = true;
  std::vector<SSetMap> out;
  auto image = [&](const SimplexRef& r) {
    SimplexRef o = assign[r.gen];
    for (auto it = r.degens.rbegin(); it != r.degens.rend(); ++it) {
      o.degens = degenerate_word(o.degens, *it);
    }
    return o;
  };
  // Some target simplex agrees with h on every face assigned so far.
  auto feasible = [&](std::size_t h) {
    const auto& gen = x->generator(h);
    std::vector<std::pair<int, SimplexRef>> known;
    for (int i = 0; i < static_cast<int>(gen.faces.size()); ++i) {
      if (assigned[gen.faces[i].gen]) known.emplace_back(i, image(gen.faces[i]));
    }
    for (const auto& [faces, s] : level[gen.dim]) {
      bool ok = true;
      for (const auto& [i, v] : known) {
        if (faces[i] != v) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      out.emplace_back(x, y, assign);
      return;
    }
    const std::size_t g = order[k];
    const auto& gen = x->generator(g);
    std::vector<SimplexRef> key;
    for (const auto& f : gen.faces) key.push_back(image(f));
    auto it = by_faces[gen.dim].find(key);
    if (it == by_faces[gen.dim].end()) return;
    assigned[g] = true;
    for (const auto& cand : it->second) {
      assign[g] = cand;
      bool ok = true;
      for (std::size_t h : cofaces[g]) {
        if (!assigned[h] && !feasible(h)) {
          ok = false;
          break;
        }
      }
      if (ok) rec(k + 1);
    }
    assigned[g] = false;
  };
  rec(0);
  return out;
}

std::vector<SSetMap> mapping_space_level(const FiniteSimplicialSet& x,
                                         std::shared_ptr<const FiniteSimplicialSet> y, int k) {
  SmashComplex d(x, add_basepoint(standard_simplex(k)));
  return enumerate_maps(std::make_shared<const FiniteSimplicialSet>(d.complex()), std::move(y));
}

bool is_one_reduced(const FiniteSimplicialSet& x) { return x.count(0) == 1 && x.count(1) == 1; }

// ---------------------------------------------------------------------------
// Levelwise construction

LevelwiseBuild from_levels(const LevelwiseData& data) {
  if (data.counts.size() != static_cast<std::size_t>(data.max_level) + 1) {
    throw PreconditionError("from_levels: counts must cover levels 0..max_level");
  }
  LevelwiseBuild out;
  std::vector<Generator> gens;
  std::size_t base_gen = 0;
  for (int n = 0; n <= data.max_level; ++n) {
    auto& refs = out.refs.emplace_back(data.counts[n]);
    for (std::size_t e = 0; e < data.counts[n]; ++e) {
      bool degenerate = false;
      for (int j = n - 1; j >= 0 && !degenerate; --j) {
        const std::size_t f = data.face(n, e, j);
        if (data.degeneracy(n - 1, f, j) == e) {
          const auto& below = out.refs[n - 1][f];
          refs[e] = SimplexRef{below.gen, degenerate_word(below.degens, j)};
          degenerate = true;
        }
      }
      if (degenerate) continue;
      Generator g{data.label ? data.label(n, e) : std::to_string(n) + ":" + std::to_string(e), n, {}};
      for (int i = 0; n > 0 && i <= n; ++i) g.faces.push_back(out.refs[n - 1][data.face(n, e, i)]);
      if (n == 0 && e == data.basepoint) base_gen = gens.size();
      refs[e] = SimplexRef{gens.size(), {}};
      gens.push_back(std::move(g));
    }
    std::set<SimplexRef> distinct(refs.begin(), refs.end());
    if (distinct.size() != refs.size()) {
      throw PreconditionError("from_levels: level " + std::to_string(n) +
                              " has two elements with the same normal form");
    }
  }
  try {
    out.complex = FiniteSimplicialSet(std::move(gens), base_gen);
  } catch (const InputError& e) {
    throw PreconditionError(std::string("from_levels: ") + e.what());
  }
  for (int n = 0; n <= data.max_level; ++n) {
    if (out.complex.count(n) != data.counts[n]) {
      throw PreconditionError("from_levels: level " + std::to_string(n) +
                              " is not closed under degeneracies");
    }
  }
  return out;
}

bool is_levelwise_bijective(const SSetMap& f, int max_level) {
  for (int n = 0; n <= max_level; ++n) {
    std::set<SimplexRef> images;
    for (const auto& s : f.source().simplices(n)) images.insert(f(s));
    if (images.size() != f.source().count(n) || images.size() != f.target().count(n)) {
      return false;
    }
  }
  return true;
}

std::optional<std::string> first_identity_violation(const FiniteSimplicialSet& x,
                                                    int max_level) {
  auto fail = [&](const SimplexRef& s, const std::string& what) {
    return std::optional<std::string>(what + " fails on " + x.label(s));
  };
  for (int n = 0; n <= max_level; ++n) {
    for (const auto& s : x.simplices(n)) {
      for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
          if (n >= 2 && x.face(x.face(s, j), i) != x.face(x.face(s, i), j - 1)) {
            return fail(s, "d_i d_j");
          }
        }
      }
      for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
          if (x.degeneracy(x.degeneracy(s, j), i) != x.degeneracy(x.degeneracy(s, i), j + 1)) {
            return fail(s, "s_i s_j");
          }
        }
      }
      for (int j = 0; j <= n; ++j) {
        const auto sj = x.degeneracy(s, j);
        for (int i = 0; i <= n + 1; ++i) {
          SimplexRef expect;
          if (i < j) {
            if (n == 0) continue;
            expect = x.degeneracy(x.face(s, i), j - 1);
          } else if (i == j || i == j + 1) {
            expect = s;
          } else {
            expect = x.degeneracy(x.face(s, i - 1), j);
          }
          if (x.face(sj, i) != expect) return fail(s, "d_i s_j");
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace hocoalg
