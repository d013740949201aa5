#include "corpus.hpp"

#include "hocoalg/sab.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace hocoalg::testing {

FiniteSimplicialSet rp2() {
  std::vector<Generator> g;
  g.push_back({"v", 0, {}});
  g.push_back({"a", 1, {SimplexRef{0, {}}, SimplexRef{0, {}}}});
  g.push_back({"f", 2, {SimplexRef{1, {}}, SimplexRef{0, {0}}, SimplexRef{1, {}}}});
  return FiniteSimplicialSet(std::move(g), 0);
}

std::vector<NamedComplex> corpus() {
  return {
      {"pt", point()},
      {"S1", sphere(1)},
      {"S2", sphere(2)},
      {"S1vS1", wedge(sphere(1), sphere(1))},
      {"S1vS2", wedge(sphere(1), sphere(2))},
      {"S1xS1", product(sphere(1), sphere(1))},
      {"S1^S1", smash(sphere(1), sphere(1))},
      {"RP2", rp2()},
  };
}

FiniteSimplicialSet corpus_member(const std::string& name) {
  for (auto& c : corpus()) {
    if (c.name == name) return c.complex;
  }
  throw std::invalid_argument("no corpus member " + name);
}

SSetMap fold_map() {
  auto source = std::make_shared<const FiniteSimplicialSet>(wedge(sphere(1), sphere(1)));
  auto target = std::make_shared<const FiniteSimplicialSet>(sphere(1));
  const SimplexRef circle{*target->find("e1"), {}};
  std::vector<SimplexRef> images;
  for (const auto& g : source->generators()) {
    images.push_back(g.dim == 0 ? SimplexRef{target->basepoint(), {}} : circle);
  }
  return SSetMap(source, target, std::move(images));
}

SSetMap constant_map(std::shared_ptr<const FiniteSimplicialSet> x,
                     std::shared_ptr<const FiniteSimplicialSet> y) {
  std::vector<SimplexRef> images;
  for (const auto& g : x->generators()) images.push_back(y->basepoint_at(g.dim));
  return SSetMap(std::move(x), std::move(y), std::move(images));
}

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

// Invariant factors of a small dense integer matrix; elementary row and
// column operations with a smallest-entry pivot.
std::vector<std::int64_t> invariant_factors(Dense m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> out;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      const std::int64_t q = m[i][t] / m[t][t];
      for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
      clean = clean && m[i][t] == 0;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      const std::int64_t q = m[t][j] / m[t][t];
      for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
      clean = clean && m[t][j] == 0;
    }
    if (!clean) continue;
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i) {
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[i][j] % m[t][t] != 0) {
          for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
          divides = false;
          break;
        }
      }
    }
    if (!divides) continue;
    out.push_back(std::llabs(m[t][t]));
    ++t;
  }
  return out;
}

}  // namespace

std::vector<AbelianGroup> oracle_reduced_homology(const FiniteSimplicialSet& x, int max_degree) {
  // Basis of level n: the non-basepoint simplices.
  std::vector<std::map<SimplexRef, std::size_t>> basis(max_degree + 2);
  for (int n = 0; n <= max_degree + 1; ++n) {
    for (const auto& s : x.simplices(n)) {
      if (!x.is_basepoint(s)) basis[n].emplace(s, basis[n].size());
    }
  }
  // boundary[n] : level n -> level n - 1, rows indexed by level n - 1.
  std::vector<Dense> boundary(max_degree + 2);
  for (int n = 1; n <= max_degree + 1; ++n) {
    Dense d(basis[n - 1].size(), std::vector<std::int64_t>(basis[n].size(), 0));
    for (const auto& [s, j] : basis[n]) {
      for (int i = 0; i <= n; ++i) {
        const SimplexRef f = x.face(s, i);
        auto it = basis[n - 1].find(f);
        if (it != basis[n - 1].end()) d[it->second][j] += (i % 2 == 0) ? 1 : -1;
      }
    }
    boundary[n] = std::move(d);
  }
  std::vector<AbelianGroup> out;
  for (int n = 0; n <= max_degree; ++n) {
    const std::size_t dim = basis[n].size();
    const std::size_t rank_out = n == 0 ? 0 : invariant_factors(boundary[n]).size();
    const auto incoming = invariant_factors(boundary[n + 1]);
    AbelianGroup g;
    g.free_rank = dim - rank_out - incoming.size();
    for (auto f : incoming) {
      if (f > 1) g.torsion.push_back(Integer(static_cast<long>(f)));
    }
    out.push_back(AbelianGroup::from_moduli([&] {
      Moduli m(g.free_rank, Integer(0));
      m.insert(m.end(), g.torsion.begin(), g.torsion.end());
      return m;
    }()));
  }
  return out;
}

FreeElement random_free_element(std::mt19937_64& rng, int depth, std::size_t atoms) {
  std::uniform_int_distribution<int> coeff(-3, 3), count(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, atoms - 1);
  FreeElement out = FreeElement::zero(0, depth);
  while (out.is_zero()) {
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      const Integer c = coeff(rng);
      if (depth == 0) {
        out = out + FreeElement::basis(0, pick(rng), c);
      } else {
        out = out + FreeElement::bracket(random_free_element(rng, depth - 1, atoms)).scaled(c);
      }
    }
  }
  return out;
}

ChainComplex random_chain_complex(std::mt19937_64& rng, int top) {
  std::uniform_int_distribution<int> kind(0, 2), mult(1, 4), shear(-2, 2), pieces(0, 2);
  ChainComplex c;
  c.terms.assign(top + 1, {});
  std::vector<std::vector<IntMatrix::Entry>> d(top + 1);
  for (int n = 0; n <= top; ++n) {
    const int count = pieces(rng);
    for (int p = 0; p < count && c.terms[n].size() < 3; ++p) {
      if (kind(rng) == 0 || n == 0 || c.terms[n - 1].size() >= 3) {
        c.terms[n].push_back(0);
        continue;
      }
      const std::size_t hi = c.terms[n].size(), lo = c.terms[n - 1].size();
      c.terms[n].push_back(0);
      c.terms[n - 1].push_back(0);
      d[n].push_back({lo, hi, Integer(mult(rng))});
    }
  }
  c.d.push_back(IntMatrix::zero(0, c.terms[0].size()));
  for (int n = 1; n <= top; ++n) {
    c.d.push_back(IntMatrix::from_triplets(c.terms[n - 1].size(), c.terms[n].size(), std::move(d[n])));
  }
  // d_n -> P_{n-1} d_n P_n^{-1} for elementary shears P_n.
  std::vector<IntMatrix> p, pinv;
  for (int n = 0; n <= top; ++n) {
    const std::size_t r = c.terms[n].size();
    IntMatrix e = IntMatrix::identity(r), ei = IntMatrix::identity(r);
    const Integer s = shear(rng);
    if (r >= 2 && s != 0) {
      e = e + IntMatrix::from_triplets(r, r, {{0, 1, s}});
      ei = ei + IntMatrix::from_triplets(r, r, {{0, 1, -s}});
    }
    p.push_back(e);
    pinv.push_back(ei);
  }
  for (int n = 1; n <= top; ++n) c.d[n] = p[n - 1] * c.d[n] * pinv[n];
  return c;
}

std::optional<std::string> free_complex_difference(const ChainComplex& a, const ChainComplex& b) {
  const int top = std::max(a.top(), b.top());
  auto rank_at = [](const ChainComplex& c, int n) { return n <= c.top() ? c.terms[n].size() : std::size_t{0}; };
  for (int n = 0; n <= top; ++n) {
    if (rank_at(a, n) != rank_at(b, n)) return "rank differs in degree " + std::to_string(n);
    if (n == 0) continue;
    const auto ia = n <= a.top() ? smith_invariants(a.d[n]) : std::vector<Integer>{};
    const auto ib = n <= b.top() ? smith_invariants(b.d[n]) : std::vector<Integer>{};
    if (ia != ib) return "differential differs in degree " + std::to_string(n);
  }
  return std::nullopt;
}

std::vector<LevelElement> random_w(const KCoalgebra& c, std::mt19937_64& rng, int size, int box) {
  std::vector<int> levels;
  for (int n = 0; n <= c.bound(); ++n) {
    if (c.carrier->rank(n) > 0) levels.push_back(n);
  }
  std::vector<LevelElement> w;
  if (levels.empty()) return w;
  std::uniform_int_distribution<int> coeff(-box, box);
  for (int i = 0; i < size; ++i) {
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

}  // namespace hocoalg::testing
