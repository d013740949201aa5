#include "hocoalg/tower.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "hocoalg/errors.hpp"

namespace hocoalg {

// ---------------------------------------------------------------------------
// Cobar

FreeElement cobar_coface(const FreeElement& e, int i) {
  if (i < 0 || i > e.depth() + 1) throw PreconditionError("cobar_coface: index out of range");
  if (i == 0) return FreeElement::bracket(e);
  std::vector<FreeElement::Term> terms;
  for (const auto& t : e.terms()) {
    FreeElement inner = e.depth() == 0 ? FreeElement::basis(e.level(), t.basis)
                                       : cobar_coface(*t.inner, i - 1);
    terms.push_back({0, std::make_shared<const FreeElement>(std::move(inner)), t.coeff});
  }
  return FreeElement::from_terms(e.level(), e.depth() + 1, std::move(terms));
}

FreeElement cobar_codegeneracy(const FreeElement& e, int j) {
  if (e.depth() < 1 || j < 0 || j >= e.depth()) {
    throw PreconditionError("cobar_codegeneracy: index out of range");
  }
  if (j == 0) return counit(e);
  std::vector<FreeElement::Term> terms;
  for (const auto& t : e.terms()) {
    FreeElement inner = cobar_codegeneracy(*t.inner, j - 1);
    if (inner.is_zero()) continue;
    terms.push_back({0, std::make_shared<const FreeElement>(std::move(inner)), t.coeff});
  }
  return FreeElement::from_terms(e.level(), e.depth() - 1, std::move(terms));
}

SymbolicCosimplicial cobar(const FiniteSimplicialSet& x, int max_codegree, int degree_bound) {
  if (max_codegree < 0) throw PreconditionError("cobar: max codegree must be >= 0");
  if (degree_bound < 0) throw PreconditionError("cobar: degree bound must be >= 0");
  SymbolicCosimplicial obj;
  obj.x = std::make_shared<const FiniteSimplicialSet>(x);
  obj.carrier = std::make_shared<const SimplicialAbelianGroup>(free_reduced(x, degree_bound));
  obj.max_codegree = max_codegree;
  obj.degree_bound = degree_bound;
  obj.basis = std::make_shared<const ReducedBasis>(x, degree_bound);
  obj.coface = cobar_coface;
  obj.codegeneracy = cobar_codegeneracy;
  auto basis = obj.basis;
  obj.coaugmentation = [basis](int n, const SimplexRef& s) {
    const auto idx = basis->index(n, s);
    return idx ? FreeElement::basis(n, *idx) : FreeElement::zero(n, 0);
  };
  return obj;
}

FreeElement random_cobar_element(const SymbolicCosimplicial& obj, int m, int n,
                                 std::mt19937_64& rng) {
  const std::size_t rank = obj.carrier->rank(n);
  if (rank == 0) return FreeElement::zero(n, m);
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<std::size_t> atom(0, rank - 1);
  auto nonzero = [&] {
    int c = 0;
    while (c == 0) c = coeff(rng);
    return c;
  };
  std::vector<FreeElement::Term> terms;
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    if (m == 0) {
      terms.push_back({atom(rng), nullptr, Integer(nonzero())});
      continue;
    }
    FreeElement inner = random_cobar_element(obj, m - 1, n, rng);
    if (inner.is_zero()) continue;
    terms.push_back({0, std::make_shared<const FreeElement>(std::move(inner)), Integer(nonzero())});
  }
  FreeElement e = FreeElement::from_terms(n, m, std::move(terms));
  return e.is_zero() ? random_cobar_element(obj, m, n, rng) : e;
}

bool IdentityReport::ok() const {
  return std::all_of(tallies.begin(), tallies.end(), [](const auto& t) { return t.failed == 0; });
}

std::size_t IdentityReport::checked() const {
  std::size_t total = 0;
  for (const auto& t : tallies) total += t.checked;
  return total;
}

namespace {

class Tallies {
 public:
  explicit Tallies(IdentityReport& rep) : rep_(rep) {}

  void record(const std::string& name, bool ok, const std::function<std::string()>& witness) {
    auto it = std::find_if(rep_.tallies.begin(), rep_.tallies.end(),
                           [&](const auto& t) { return t.name == name; });
    if (it == rep_.tallies.end()) {
      rep_.tallies.push_back(IdentityTally{name, 0, 0, std::nullopt});
      it = rep_.tallies.end() - 1;
    }
    ++it->checked;
    if (!ok) {
      ++it->failed;
      if (!it->witness) it->witness = witness();
    }
  }

 private:
  IdentityReport& rep_;
};

std::string where(int m, int n, const FreeElement& e) {
  return "codegree " + std::to_string(m) + ", level " + std::to_string(n) + ", e = " +
         e.to_string();
}

}  // namespace

IdentityReport check_cosimplicial_identities(const SymbolicCosimplicial& obj,
                                             std::size_t samples, std::uint64_t seed) {
  IdentityReport rep;
  rep.seed = seed;
  Tallies tally(rep);
  std::mt19937_64 rng(seed);
  const auto& d = obj.coface;
  const auto& s = obj.codegeneracy;
  const auto& carrier = *obj.carrier;
  for (int m = 0; m <= obj.max_codegree; ++m) {
    for (int n = 0; n <= obj.degree_bound; ++n) {
      for (std::size_t k = 0; k < samples; ++k) {
        const FreeElement e = random_cobar_element(obj, m, n, rng);
        ++rep.samples;
        auto w = [&](const std::string& what) { return [&, what] { return what + " at " + where(m, n, e); }; };
        for (int j = 1; j <= m + 2; ++j) {
          for (int i = 0; i < j; ++i) {
            const std::string id = "d^" + std::to_string(j) + " d^" + std::to_string(i);
            tally.record("d^j d^i = d^i d^(j-1)", d(d(e, i), j) == d(d(e, j - 1), i), w(id));
          }
        }
        for (int j = 0; j <= m; ++j) {
          const std::string js = std::to_string(j);
          tally.record("s^j d^j = id", s(d(e, j), j) == e, w("s^" + js + " d^" + js));
          tally.record("s^j d^(j+1) = id", s(d(e, j + 1), j) == e, w("s^" + js + " d^" + js + "+1"));
          for (int i = 0; m >= 1 && i < j; ++i) {
            tally.record("s^j d^i = d^i s^(j-1), i < j", s(d(e, i), j) == d(s(e, j - 1), i),
                         w("s^" + js + " d^" + std::to_string(i)));
          }
          for (int i = j + 2; j <= m - 1 && i <= m + 1; ++i) {
            tally.record("s^j d^i = d^(i-1) s^j, i > j+1", s(d(e, i), j) == d(s(e, j), i - 1),
                         w("s^" + js + " d^" + std::to_string(i)));
          }
        }
        for (int j = 0; j <= m - 2; ++j) {
          for (int i = 0; i <= j; ++i) {
            tally.record("s^j s^i = s^i s^(j+1), i <= j", s(s(e, i), j) == s(s(e, j + 1), i),
                         w("s^" + std::to_string(j) + " s^" + std::to_string(i)));
          }
        }
        for (int f = 0; n >= 1 && f <= n; ++f) {
          const FreeElement de = face(e, f, carrier);
          for (int i = 0; i <= m + 1; ++i) {
            tally.record("d_f d^i = d^i d_f", face(d(e, i), f, carrier) == d(de, i),
                         w("d_" + std::to_string(f) + " d^" + std::to_string(i)));
          }
          for (int j = 0; j <= m - 1; ++j) {
            tally.record("d_f s^j = s^j d_f", face(s(e, j), f, carrier) == s(de, j),
                         w("d_" + std::to_string(f) + " s^" + std::to_string(j)));
          }
        }
        if (m == 0) {
          const auto all = obj.x->simplices(n);
          const SimplexRef& x = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
          const FreeElement c = obj.coaugmentation(n, x);
          tally.record("d^0 eta = d^1 eta", d(c, 0) == d(c, 1),
                       [&] { return "at level " + std::to_string(n) + ", x = " + obj.x->label(x); });
        }
      }
    }
  }
  return rep;
}

IdentityReport check_contraction(const SymbolicCosimplicial& obj, std::size_t samples,
                                 std::uint64_t seed) {
  IdentityReport rep;
  rep.seed = seed;
  Tallies tally(rep);
  std::mt19937_64 rng(seed);
  const auto& d = obj.coface;
  const auto& s = obj.codegeneracy;
  for (const char* name : {"X0 s^0 d^0 = id", "X1 s^0 d^1 = id", "X2 s^0 d^(i+2) = d^(i+1) s^0",
                           "X3 s^0 s^(j+2) = s^(j+1) s^0"}) {
    rep.tallies.push_back(IdentityTally{name, 0, 0, std::nullopt});
  }
  for (int m = 0; m <= obj.max_codegree; ++m) {
    for (int n = 0; n <= obj.degree_bound; ++n) {
      for (std::size_t k = 0; k < samples; ++k) {
        const FreeElement e = random_cobar_element(obj, m, n, rng);
        ++rep.samples;
        auto w = [&](const std::string& what) { return [&, what] { return what + " at " + where(m, n, e); }; };
        tally.record("X0 s^0 d^0 = id", s(d(e, 0), 0) == e, w("s^0 d^0"));
        tally.record("X1 s^0 d^1 = id", s(d(e, 1), 0) == e, w("s^0 d^1"));
        for (int i = 0; m >= 1 && i + 2 <= m + 1; ++i) {
          tally.record("X2 s^0 d^(i+2) = d^(i+1) s^0", s(d(e, i + 2), 0) == d(s(e, 0), i + 1),
                       w("i = " + std::to_string(i)));
        }
        for (int j = 0; j + 2 <= m - 1; ++j) {
          tally.record("X3 s^0 s^(j+2) = s^(j+1) s^0", s(s(e, j + 2), 0) == s(s(e, 0), j + 1),
                       w("j = " + std::to_string(j)));
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Matrix-presented objects

IdentityReport check_cosimplicial_identities(const MatrixSemiCosimplicial& obj) {
  IdentityReport rep;
  Tallies tally(rep);
  const int top = static_cast<int>(obj.codegrees.size()) - 1;
  for (int m = 0; m < top && m < static_cast<int>(obj.cofaces.size()); ++m) {
    for (std::size_t i = 0; i < obj.cofaces[m].size(); ++i) {
      const auto err = obj.cofaces[m][i].check();
      tally.record("coface is a simplicial map", !err, [&] {
        return "d^" + std::to_string(i) + " at codegree " + std::to_string(m) + ": " + *err;
      });
    }
  }
  for (int m = 0; m + 2 <= top && m + 1 < static_cast<int>(obj.cofaces.size()); ++m) {
    for (int j = 1; j <= m + 2; ++j) {
      for (int i = 0; i < j; ++i) {
        const bool ok = equal_maps(compose(obj.cofaces[m + 1][j], obj.cofaces[m][i]),
                                   compose(obj.cofaces[m + 1][i], obj.cofaces[m][j - 1]));
        tally.record("d^j d^i = d^i d^(j-1)", ok, [&] {
          return "d^" + std::to_string(j) + " d^" + std::to_string(i) + " at codegree " +
                 std::to_string(m);
        });
      }
    }
  }
  return rep;
}

MatrixSemiCosimplicial constant_cosimplicial(SAbPtr a, int max_codegree) {
  MatrixSemiCosimplicial obj;
  for (int m = 0; m <= max_codegree; ++m) obj.codegrees.push_back(a);
  for (int m = 0; m < max_codegree; ++m) {
    obj.cofaces.emplace_back(m + 2, identity(a));
  }
  return obj;
}

MatrixSemiCosimplicial insertion_cosimplicial(SAbPtr a, int max_codegree) {
  MatrixSemiCosimplicial obj;
  SimplicialAbelianGroup sum = *a;
  obj.codegrees.push_back(a);
  for (int m = 1; m <= max_codegree; ++m) {
    sum = direct_sum(sum, *a);
    obj.codegrees.push_back(std::make_shared<const SimplicialAbelianGroup>(sum));
  }
  for (int m = 0; m < max_codegree; ++m) {
    auto& level = obj.cofaces.emplace_back();
    for (int i = 0; i <= m + 1; ++i) {
      SAbMap f{obj.codegrees[m], obj.codegrees[m + 1], {}};
      for (int n = 0; n <= a->bound; ++n) {
        const std::size_t r = a->rank(n);
        std::vector<IntMatrix::Entry> e;
        for (int p = 0; p <= m + 1; ++p) {
          if (p == i) continue;
          const std::size_t src = static_cast<std::size_t>(p < i ? p : p - 1);
          for (std::size_t c = 0; c < r; ++c) e.push_back({p * r + c, src * r + c, Integer(1)});
        }
        f.components.push_back(IntMatrix::from_triplets((m + 2) * r, (m + 1) * r, std::move(e)));
      }
      level.push_back(std::move(f));
    }
  }
  return obj;
}

// ---------------------------------------------------------------------------
// Cotensors

namespace {

IntMatrix embed_columns(const IntMatrix& m, std::size_t offset, std::size_t cols) {
  std::vector<IntMatrix::Entry> e;
  for (const auto& x : m.entries()) e.push_back({x.row, x.col + offset, x.value});
  return IntMatrix::from_triplets(m.rows(), cols, std::move(e));
}

IntMatrix degenerate_values(const SimplicialAbelianGroup& a, IntMatrix m, int level,
                            const std::vector<int>& degens) {
  for (auto it = degens.rbegin(); it != degens.rend(); ++it) {
    m = compose_mod(a.degens.at(level).at(*it), m, a.levels.at(level + 1));
    ++level;
  }
  return m;
}

struct Layout {
  std::vector<std::size_t> maximal;
  std::vector<std::size_t> offsets;
  std::vector<Integer> moduli;
};

Layout layout(const SimplicialAbelianGroup& a, const FiniteSimplicialSet& p) {
  std::vector<bool> is_face(p.num_generators(), false);
  for (const auto& g : p.generators()) {
    for (const auto& f : g.faces) is_face[f.gen] = true;
  }
  Layout out;
  std::size_t at = 0;
  for (std::size_t g = 0; g < p.num_generators(); ++g) {
    if (is_face[g]) continue;
    const auto& l = a.levels.at(p.generator(g).dim);
    out.maximal.push_back(g);
    out.offsets.push_back(at);
    out.moduli.insert(out.moduli.end(), l.begin(), l.end());
    at += l.size();
  }
  out.offsets.push_back(at);
  return out;
}

IntMatrix stack(const std::vector<IntMatrix>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  std::vector<IntMatrix::Entry> e;
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (const auto& x : b.entries()) e.push_back({x.row + at, x.col, x.value});
    at += b.rows();
  }
  return IntMatrix::from_triplets(rows, cols, std::move(e));
}

const FiniteSimplicialSet& product_at(const Cotensor& c, int k) { return c.products.at(k)->complex(); }

IntMatrix value_matrix_from(const Cotensor& c, int k, const SimplexRef& t) {
  return degenerate_values(*c.values, c.generator_values.at(k).at(t.gen),
                           product_at(c, k).generator(t.gen).dim, t.degens);
}

IntMatrix in_coordinates(const Subgroup& target, const IntMatrix& ambient_map) {
  try {
    return target.coordinates(ambient_map);
  } catch (const std::domain_error&) {
    throw PreconditionError("cotensor: image is not a simplicial map");
  }
}

}  // namespace

Cotensor cotensor(SAbPtr a, std::shared_ptr<const FiniteSimplicialSet> s, int degree_bound) {
  if (degree_bound < 0) throw PreconditionError("cotensor: degree bound must be >= 0");
  if (a->bound < s->max_dim() + degree_bound) {
    throw PreconditionError("cotensor: values must be stored to degree " +
                            std::to_string(s->max_dim() + degree_bound));
  }
  Cotensor c;
  c.shape = s;
  c.values = a;
  auto obj = std::make_shared<SimplicialAbelianGroup>();
  obj->bound = degree_bound;
  for (int k = 0; k <= degree_bound; ++k) {
    auto prod = std::make_shared<const ProductComplex>(*s, standard_simplex(k));
    const auto& p = prod->complex();
    const Layout lay = layout(*a, p);
    const std::size_t cols = lay.offsets.back();
    // Values are pushed down from the maximal generators along faces; a face
    // reached a second time, or a degenerate face, becomes an equation.
    std::vector<std::optional<IntMatrix>> values(p.num_generators());
    for (std::size_t i = 0; i < lay.maximal.size(); ++i) {
      const std::size_t g = lay.maximal[i];
      values[g] = embed_columns(IntMatrix::identity(a->rank(p.generator(g).dim)), lay.offsets[i], cols);
    }
    std::vector<std::size_t> order(p.num_generators());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return p.generator(x).dim > p.generator(y).dim;
    });
    std::vector<IntMatrix> rows;
    std::vector<Integer> target;
    for (const std::size_t h : order) {
      if (!values[h]) throw std::logic_error("cotensor: generator not reached");
      const int d = p.generator(h).dim;
      for (int i = 0; i <= d && d > 0; ++i) {
        const IntMatrix face_value = compose_mod(a->faces[d][i], *values[h], a->levels[d - 1]);
        const SimplexRef& r = p.generator(h).faces[i];
        if (!values[r.gen]) {
          IntMatrix y = face_value;
          int level = d - 1;
          for (const int j : r.degens) {
            y = compose_mod(a->faces[level][j], y, a->levels[level - 1]);
            --level;
          }
          values[r.gen] = std::move(y);
          if (r.degens.empty()) continue;
        }
        rows.push_back(face_value - degenerate_values(*a, *values[r.gen], p.generator(r.gen).dim, r.degens));
        target.insert(target.end(), a->levels[d - 1].begin(), a->levels[d - 1].end());
      }
    }
    c.levels.push_back(kernel_subgroup(lay.moduli, target, stack(rows, lay.moduli.size())));
    auto& stored = c.generator_values.emplace_back();
    for (auto& v : values) stored.push_back(std::move(*v));
    c.maximal.push_back(lay.maximal);
    c.offsets.push_back(lay.offsets);
    c.products.push_back(std::move(prod));
    obj->levels.push_back(c.levels.back().moduli());
  }
  // Structure maps: precompose with id x theta.
  auto induced = [&](int from, int to, const std::vector<int>& theta) {
    const auto& dst = *c.products[to];
    std::vector<IntMatrix> blocks;
    for (std::size_t g : c.maximal[to]) {
      const auto [u, t] = dst.components(SimplexRef{g, {}});
      std::vector<int> moved;
      for (int v : simplex_vertices(dst.right(), t)) moved.push_back(theta[v]);
      const SimplexRef img = c.products[from]->pair(u, simplex_with_vertices(c.products[from]->right(), moved));
      blocks.push_back(value_matrix_from(c, from, img));
    }
    const IntMatrix r = stack(blocks, c.offsets[from].back());
    return in_coordinates(c.levels[to],
                          compose_mod(r, c.levels[from].inclusion(), c.levels[to].ambient_moduli()));
  };
  for (int k = 0; k <= degree_bound; ++k) {
    auto& fc = obj->faces.emplace_back();
    for (int i = 0; k > 0 && i <= k; ++i) fc.push_back(induced(k, k - 1, coface_operator(k, i)));
    auto& dg = obj->degens.emplace_back();
    for (int j = 0; k < degree_bound && j <= k; ++j) {
      dg.push_back(induced(k, k + 1, codegeneracy_operator(k, j)));
    }
  }
  c.object = obj;
  return c;
}

SAbMap cotensor_restriction(const Cotensor& source, const Cotensor& target, const SSetMap& f) {
  SAbMap out{source.object, target.object, {}};
  const int bound = std::min(source.object->bound, target.object->bound);
  for (int k = 0; k <= bound; ++k) {
    const auto& dst = *target.products[k];
    std::vector<IntMatrix> blocks;
    for (std::size_t g : target.maximal[k]) {
      const auto [u, t] = dst.components(SimplexRef{g, {}});
      const SimplexRef img = source.products[k]->pair(f(u), t);
      blocks.push_back(value_matrix_from(source, k, img));
    }
    out.components.push_back(in_coordinates(
        target.levels[k], compose_mod(stack(blocks, source.offsets[k].back()),
                                      source.levels[k].inclusion(), target.levels[k].ambient_moduli())));
  }
  return out;
}

SAbMap cotensor_postcompose(const Cotensor& source, const Cotensor& target, const SAbMap& phi) {
  SAbMap out{source.object, target.object, {}};
  const int bound = std::min(source.object->bound, target.object->bound);
  for (int k = 0; k <= bound; ++k) {
    const auto& p = product_at(source, k);
    std::vector<IntMatrix::Entry> e;
    for (std::size_t i = 0; i < source.maximal[k].size(); ++i) {
      const int d = p.generator(source.maximal[k][i]).dim;
      for (const auto& x : phi.components.at(d).entries()) {
        e.push_back({x.row + target.offsets[k][i], x.col + source.offsets[k][i], x.value});
      }
    }
    const IntMatrix r = IntMatrix::from_triplets(target.offsets[k].back(), source.offsets[k].back(), std::move(e));
    out.components.push_back(in_coordinates(
        target.levels[k],
        compose_mod(r, source.levels[k].inclusion(), target.levels[k].ambient_moduli())));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restricted totalization

namespace {

SSetMap boundary_inclusion(int n) {
  auto bd = std::make_shared<const FiniteSimplicialSet>(boundary(n));
  auto full = std::make_shared<const FiniteSimplicialSet>(standard_simplex(n));
  std::vector<SimplexRef> assign;
  for (const auto& g : bd->generators()) assign.push_back(SimplexRef{*full->find(g.id), {}});
  return SSetMap(bd, full, std::move(assign));
}

// Tot^res_{n-1} -> (Z^n)^{boundary}: on the face missing i, d^i of the top component.
SAbMap glue_faces(const MatrixSemiCosimplicial& obj, const TotStage& prev, const Cotensor& bd, int n) {
  const Cotensor& pc = prev.top_cotensor;
  const auto& zn = *obj.codegrees[n];
  SAbMap out{prev.object, bd.object, {}};
  for (int k = 0; k <= bd.object->bound; ++k) {
    const auto& bp = *bd.products[k];
    std::vector<IntMatrix> blocks;
    for (std::size_t g : bd.maximal[k]) {
      const auto [u, t] = bp.components(SimplexRef{g, {}});
      const auto verts = simplex_vertices(bp.left(), u);
      int i = 0;
      while (std::find(verts.begin(), verts.end(), i) != verts.end()) ++i;
      std::vector<int> lowered;
      for (int v : verts) lowered.push_back(v > i ? v - 1 : v);
      const SimplexRef img = pc.products[k]->pair(simplex_with_vertices(pc.products[k]->left(), lowered), t);
      const int d = bp.complex().generator(g).dim;
      blocks.push_back(compose_mod(obj.cofaces[n - 1][i].components.at(d),
                                   value_matrix_from(pc, k, img), zn.levels.at(d)));
    }
    const IntMatrix r = stack(blocks, pc.offsets[k].back());
    const IntMatrix z = compose_mod(pc.levels[k].inclusion(), prev.top.components[k],
                                    pc.levels[k].ambient_moduli());
    out.components.push_back(
        in_coordinates(bd.levels[k], compose_mod(r, z, bd.levels[k].ambient_moduli())));
  }
  return out;
}

}  // namespace

std::vector<TotStage> tot_res_tower(const MatrixSemiCosimplicial& obj, int n, int degree_bound) {
  if (n < 0 || n >= static_cast<int>(obj.codegrees.size())) {
    throw PreconditionError("tot_res: codegree " + std::to_string(n) + " is not present");
  }
  for (int m = 0; m <= n; ++m) {
    if (!obj.codegrees[m]) throw PreconditionError("tot_res: missing codegree");
    if (obj.codegrees[m]->bound < m + degree_bound) {
      throw PreconditionError("tot_res: codegree " + std::to_string(m) +
                              " must be stored to degree " + std::to_string(m + degree_bound));
    }
    if (m < n && (m >= static_cast<int>(obj.cofaces.size()) ||
                  obj.cofaces[m].size() != static_cast<std::size_t>(m + 2))) {
      throw PreconditionError("tot_res: cofaces of codegree " + std::to_string(m) + " missing");
    }
  }
  std::vector<TotStage> stages;
  {
    TotStage s0;
    s0.top_cotensor = cotensor(obj.codegrees[0], std::make_shared<const FiniteSimplicialSet>(standard_simplex(0)),
                               degree_bound);
    s0.object = s0.top_cotensor.object;
    s0.top = identity(s0.object);
    stages.push_back(std::move(s0));
  }
  for (int m = 1; m <= n; ++m) {
    const TotStage& prev = stages.back();
    Cotensor full = cotensor(obj.codegrees[m], std::make_shared<const FiniteSimplicialSet>(standard_simplex(m)),
                             degree_bound);
    const Cotensor bd = cotensor(obj.codegrees[m], std::make_shared<const FiniteSimplicialSet>(boundary(m)),
                                 degree_bound);
    const SAbMap rho = cotensor_restriction(full, bd, boundary_inclusion(m));
    const SAbMap psi = glue_faces(obj, prev, bd, m);
    TotStage st;
    st.n = m;
    Pullback pb = pullback(psi, rho);
    st.object = pb.object;
    st.to_previous = pb.to_left;
    st.top = pb.to_right;
    st.top_cotensor = std::move(full);
    st.fibration = is_fibration(st.to_previous);
    st.square = std::move(pb);
    stages.push_back(std::move(st));
  }
  return stages;
}

TotStage tot_res_stage(const MatrixSemiCosimplicial& obj, int n, int degree_bound) {
  return tot_res_tower(obj, n, degree_bound).back();
}

SAbMap tot_res_zero_evaluation(const TotStage& stage0, SAbPtr z0) {
  const Cotensor& c = stage0.top_cotensor;
  SAbMap out{stage0.object, z0, {}};
  for (int k = 0; k <= stage0.object->bound; ++k) {
    const auto& p = *c.products[k];
    std::vector<int> top;
    for (int v = 0; v <= k; ++v) top.push_back(v);
    const SimplexRef t = p.pair(simplex_with_vertices(p.left(), std::vector<int>(k + 1, 0)),
                                simplex_with_vertices(p.right(), top));
    out.components.push_back(
        compose_mod(value_matrix_from(c, k, t), c.levels[k].inclusion(), z0->levels.at(k)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Postnikov towers

SAbMap factor_through(const SAbMap& f, const SAbMap& h) {
  SAbMap g{f.target, h.target, {}};
  for (int n = 0; n <= std::min(f.bound(), h.bound()); ++n) {
    const auto& mid = f.target->levels[n];
    const auto& out = h.target->levels[n];
    const SystemSolver solver(IntMatrix::hstack(f.components[n], relation_matrix(mid)));
    const std::size_t cols = f.components[n].cols();
    std::vector<IntVector> columns;
    for (std::size_t j = 0; j < mid.size(); ++j) {
      IntVector e(mid.size());
      e[j] = 1;
      const auto sol = solver.solve(e);
      if (!sol) throw PreconditionError("factor_through: map is not onto in level " + std::to_string(n));
      const IntVector x(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(cols));
      columns.push_back(h.components[n] * x);
    }
    IntMatrix gn = IntMatrix::from_columns(out.size(), columns).reduced_rows(out);
    if (!equal_mod(compose_mod(gn, f.components[n], out), h.components[n], out)) {
      throw PreconditionError("factor_through: kernel condition fails in level " + std::to_string(n));
    }
    g.components.push_back(std::move(gn));
  }
  return g;
}

std::vector<AbelianGroup> homotopy_table(const SimplicialAbelianGroup& a) {
  std::vector<AbelianGroup> out;
  for (int n = 0; n < a.bound; ++n) out.push_back(homotopy_group(a, n));
  return out;
}

namespace {

std::vector<AbelianGroup> table_below(const SimplicialAbelianGroup& a, int top) {
  std::vector<AbelianGroup> out;
  for (int n = 0; n < top; ++n) out.push_back(homotopy_group(a, n));
  return out;
}

void compare_tables(PostnikovTower& tower, int n, const std::vector<AbelianGroup>& got,
                    const std::vector<AbelianGroup>& expect) {
  for (std::size_t m = 0; m < got.size() && m < expect.size(); ++m) {
    if (!(got[m] == expect[m])) {
      tower.failures.push_back("stage " + std::to_string(n) + ": pi_" + std::to_string(m) + " is " +
                               got[m].to_string() + ", expected " + expect[m].to_string());
    }
  }
}

}  // namespace

PostnikovTower postnikov_tower(SAbPtr a, int degree_bound) {
  if (degree_bound < 1) throw PreconditionError("postnikov_tower: degree bound must be >= 1");
  if (a->bound < degree_bound) {
    throw PreconditionError("postnikov_tower: carrier must be stored to degree " +
                            std::to_string(degree_bound));
  }
  PostnikovTower tower;
  tower.degree_bound = degree_bound;
  const auto source_pi = table_below(*a, degree_bound);
  for (int n = 0; n < degree_bound; ++n) {
    Truncation tr = postnikov_truncation(a, n);
    PostnikovStage st;
    st.n = n;
    st.object = tr.stage;
    st.from_source = tr.map;
    st.pi = table_below(*tr.stage, degree_bound);
    std::vector<AbelianGroup> expect;
    for (int m = 0; m < degree_bound; ++m) expect.push_back(m <= n ? source_pi[m] : AbelianGroup());
    compare_tables(tower, n, st.pi, expect);
    if (auto bad = first_pi_failure(tr.map, n)) {
      tower.failures.push_back("stage " + std::to_string(n) + ": A -> X<n> is not a pi-iso in degree " +
                               std::to_string(*bad));
    }
    if (n > 0) {
      const SAbMap g = factor_through(tr.map, *tower.stages.back().from_source);
      if (!is_fibration(g)) {
        tower.failures.push_back("stage " + std::to_string(n) + ": X<n> -> X<n-1> is not a fibration");
      }
      if (auto bad = first_pi_failure(g, n - 1)) {
        tower.failures.push_back("stage " + std::to_string(n) + ": X<n> -> X<n-1> is not a pi-iso in degree " +
                                 std::to_string(*bad));
      }
      st.to_previous = g;
    }
    tower.stages.push_back(std::move(st));
  }
  return tower;
}

PostnikovTower postnikov_tower(const FiniteSimplicialSet& x, const Moduli& pi2,
                               const std::vector<KInvariantInput>& k_invariants, int degree_bound) {
  if (!is_one_reduced(x)) throw PreconditionError("postnikov_tower: X is not 1-reduced");
  if (degree_bound < 3) throw PreconditionError("postnikov_tower: degree bound must be >= 3");
  PostnikovTower tower;
  tower.degree_bound = degree_bound;
  const AbelianGroup h2 = homotopy_group(free_reduced(x, 3), 2);
  if (!(h2 == AbelianGroup::from_moduli(pi2))) {
    tower.failures.push_back("pi_2 given as " + AbelianGroup::from_moduli(pi2).to_string() +
                             " but H_2(X) = " + h2.to_string());
  }
  std::vector<AbelianGroup> expect(degree_bound);
  expect[2] = AbelianGroup::from_moduli(pi2);

  PostnikovStage first;
  first.n = 2;
  first.object = std::make_shared<const SimplicialAbelianGroup>(eilenberg_maclane(pi2, 2, degree_bound));
  first.pi = table_below(*first.object, degree_bound);
  compare_tables(tower, 2, first.pi, std::vector<AbelianGroup>(expect.begin(), expect.begin() + 3));
  tower.stages.push_back(std::move(first));

  int degree = 3;
  for (const auto& k : k_invariants) {
    if (k.degree != degree) {
      throw InputError("postnikov_tower: k-invariants must cover degrees 3, 4, ... in order");
    }
    const SAbPtr prev = tower.stages.back().object;
    auto em = std::make_shared<const SimplicialAbelianGroup>(
        eilenberg_maclane(k.group, degree + 1, degree_bound + 1));
    SAbMap kmap;
    if (!k.components) {
      kmap = zero_map(prev, em);
    } else {
      if (k.components->size() < static_cast<std::size_t>(degree_bound) + 1) {
        throw InputError("k-invariant in degree " + std::to_string(degree) + " needs " +
                         std::to_string(degree_bound + 1) + " components");
      }
      kmap = SAbMap{prev, em, std::vector<IntMatrix>(k.components->begin(),
                                                     k.components->begin() + degree_bound + 1)};
      if (auto err = kmap.check()) {
        throw InputError("k-invariant in degree " + std::to_string(degree) + ": " + *err);
      }
    }
    PathObject path = path_object(em);
    const std::string tag = "stage " + std::to_string(degree) + ": ";
    if (!is_fibration(path.projection)) tower.failures.push_back(tag + "path projection is not a fibration");
    Pullback pb = pullback(kmap, path.projection);
    if (auto bad = verify_pullback(pb, kmap, path.projection, 8, static_cast<std::uint64_t>(degree))) {
      tower.failures.push_back(tag + *bad);
    }
    PostnikovStage st;
    st.n = degree;
    st.object = pb.object;
    st.to_previous = pb.to_left;
    if (!is_fibration(pb.to_left)) tower.failures.push_back(tag + "stage map is not a fibration");
    if (degree < degree_bound) expect[degree] = AbelianGroup::from_moduli(k.group);
    st.pi = table_below(*st.object, degree_bound);
    compare_tables(tower, degree, st.pi, expect);
    if (auto bad = first_pi_failure(pb.to_left, std::min(degree - 1, degree_bound - 1))) {
      tower.failures.push_back(tag + "stage map is not a pi-iso in degree " + std::to_string(*bad));
    }
    st.k_invariant = std::move(kmap);
    st.path = std::move(path);
    st.square = std::move(pb);
    tower.stages.push_back(std::move(st));
    ++degree;
  }
  return tower;
}

std::optional<std::string> verify_pullback(const Pullback& p, const SAbMap& f, const SAbMap& g,
                                           std::size_t samples, std::uint64_t seed) {
  if (!equal_maps(compose(f, p.to_left), compose(g, p.to_right))) {
    return std::string("pullback square does not commute");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int n = 0; n <= p.object->bound; ++n) {
    const Subgroup& level = p.levels[n];
    if (kernel_subgroup(level.moduli(), level.ambient_moduli(), level.inclusion()).size() != 0) {
      return "pullback level " + std::to_string(n) + " does not embed";
    }
    const auto& cm = f.target->levels[n];
    const IntMatrix m = IntMatrix::hstack(IntMatrix::hstack(f.components[n], -g.components[n]),
                                          relation_matrix(cm));
    const IntMatrix kb = kernel_basis(m);
    const std::size_t width = f.components[n].cols() + g.components[n].cols();
    for (std::size_t s = 0; s < samples && kb.cols() > 0; ++s) {
      IntVector v(width);
      for (std::size_t c = 0; c < kb.cols(); ++c) {
        const Integer a = coeff(rng);
        if (a == 0) continue;
        const IntVector col = kb.column(c);
        for (std::size_t r = 0; r < width; ++r) v[r] += a * col[r];
      }
      v = reduced(v, level.ambient_moduli());
      const auto coords = level.coordinates(v);
      if (!coords || reduced(level.inclusion() * *coords, level.ambient_moduli()) != v) {
        return "test cone in level " + std::to_string(n) + " does not factor through the pullback";
      }
    }
  }
  return std::nullopt;
}

FibrantReplacementReport fibrant_replacement_report(SAbPtr a, int degree_bound) {
  if (degree_bound < 1) throw PreconditionError("fibrant_replacement_report: degree bound must be >= 1");
  if (a->bound < std::max(degree_bound, 2)) {
    throw PreconditionError("fibrant_replacement_report: carrier must be stored to degree " +
                            std::to_string(std::max(degree_bound, 2)));
  }
  for (int n = 0; n <= 1; ++n) {
    const AbelianGroup g = homotopy_group(*a, n);
    if (!g.is_trivial()) {
      throw PreconditionError("fibrant_replacement_report: not 1-connected (pi_" + std::to_string(n) +
                              " = " + g.to_string() + ")");
    }
  }
  FibrantReplacementReport rep;
  rep.degree_bound = degree_bound;
  rep.source_pi = table_below(*a, degree_bound);
  Truncation top;
  for (int n = 0; n <= degree_bound; ++n) {
    Truncation tr = postnikov_truncation(a, n);
    rep.stage_pi.push_back(table_below(*tr.stage, degree_bound));
    if (n == degree_bound) top = std::move(tr);
  }
  rep.failure_degree = first_pi_failure(top.map, degree_bound - 1);
  rep.certified = !rep.failure_degree;
  return rep;
}

}  // namespace hocoalg
