#include "hocoalg/susp_comonad.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hocoalg/errors.hpp"

namespace hocoalg {

SuspComonadInstance::SuspComonadInstance(int r, int max_level) : r_(r), sphere_(hocoalg::sphere(r)) {
  if (max_level < 0) throw PreconditionError("suspension comonad: max_level must be >= 0");
  for (int k = 0; k <= max_level; ++k) {
    simplices_.push_back(add_basepoint(standard_simplex(k)));
    auto disk = std::make_shared<const SmashComplex>(sphere_, simplices_.back());
    disk_complexes_.push_back(std::shared_ptr<const FiniteSimplicialSet>(disk, &disk->complex()));
    auto& comps = comps_.emplace_back();
    const auto& d = disk->complex();
    for (std::size_t g = 0; g < d.num_generators(); ++g) {
      auto c = disk->components(SimplexRef{g, {}});
      if (!c) {
        comps.emplace_back();
        continue;
      }
      comps.emplace_back(std::make_pair(c->first, vertices(k, c->second)));
    }
    disks_.push_back(std::move(disk));
  }
}

std::shared_ptr<const FiniteSimplicialSet> SuspComonadInstance::disk_complex(int k) const {
  return disk_complexes_.at(k);
}

SimplexRef SuspComonadInstance::delta_simplex(int n, const std::vector<int>& v) const {
  return simplex_with_vertices(simplices_.at(n), v);
}

std::vector<int> SuspComonadInstance::vertices(int n, const SimplexRef& t) const {
  const auto& x = simplices_.at(n);
  if (x.is_basepoint(t)) throw PreconditionError("vertices: basepoint of Delta^n_+");
  return simplex_vertices(x, t);
}

SimplexRef SuspComonadInstance::evaluate(const LoopElement& w, const SimplexRef& d) const {
  SimplexRef out = w.assignment.at(d.gen);
  for (auto it = d.degens.rbegin(); it != d.degens.rend(); ++it) {
    out.degens = degenerate_word(out.degens, *it);
  }
  return out;
}

LoopElement SuspComonadInstance::precompose(const LoopElement& w,
                                            const std::vector<int>& theta) const {
  const int m = static_cast<int>(theta.size()) - 1;
  const int n = w.level;
  LoopElement out{m, {}};
  const auto& target_disk = disk(n);
  const auto& comps = comps_.at(m);
  out.assignment.reserve(comps.size());
  const SimplexRef base = w.assignment.at(disk(n).complex().basepoint());
  for (const auto& c : comps) {
    if (!c) {
      out.assignment.push_back(base);
      continue;
    }
    std::vector<int> moved;
    for (int v : c->second) moved.push_back(theta.at(v));
    out.assignment.push_back(evaluate(w, target_disk.pair(c->first, delta_simplex(n, moved))));
  }
  return out;
}

LoopElement SuspComonadInstance::constant(int k, const FiniteSimplicialSet& y) const {
  LoopElement out{k, {}};
  for (const auto& g : disk(k).complex().generators()) out.assignment.push_back(y.basepoint_at(g.dim));
  return out;
}

bool SuspComonadInstance::is_constant(const LoopElement& w, const FiniteSimplicialSet& y) const {
  for (const auto& s : w.assignment) {
    if (!y.is_basepoint(s)) return false;
  }
  return true;
}

std::vector<LoopElement> SuspComonadInstance::loops(const FiniteSimplicialSet& y, int k) const {
  auto target = std::make_shared<const FiniteSimplicialSet>(y);
  std::vector<LoopElement> out;
  for (const auto& f : enumerate_maps(disk_complex(k), target)) {
    out.push_back(LoopElement{k, f.assignment()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

void SuspComonadInstance::validate_loop(const LoopElement& w, const FiniteSimplicialSet& y) const {
  if (w.level < 0 || w.level > max_level()) {
    throw PreconditionError("loop level " + std::to_string(w.level) + " outside the instance");
  }
  try {
    SSetMap(disk_complex(w.level), std::make_shared<const FiniteSimplicialSet>(y), w.assignment);
  } catch (const InputError& e) {
    throw PreconditionError(std::string("not a loop: ") + e.what());
  }
}

LoopElement SuspComonadInstance::unit(const SmashComplex& suspension, const SimplexRef& x) const {
  const auto& carrier = suspension.product().left();
  const int n = carrier.dim(x);
  LoopElement out{n, {}};
  const auto& s = suspension.complex();
  for (std::size_t g = 0; g < comps_.at(n).size(); ++g) {
    const auto& c = comps_[n][g];
    if (!c) {
      out.assignment.push_back(s.basepoint_at(0));
      continue;
    }
    out.assignment.push_back(suspension.pair(carrier.apply_operator(x, c->second), c->first));
  }
  return out;
}

SuspLoopElement SuspComonadInstance::pair(const LoopElement& w, const SimplexRef& a,
                                          const FiniteSimplicialSet& y) const {
  if (sphere_.is_basepoint(a) || is_constant(w, y)) return SuspLoopElement{};
  return SuspLoopElement{false, w, a};
}

SimplexRef SuspComonadInstance::counit(const SuspLoopElement& e, const FiniteSimplicialSet& y,
                                       int n) const {
  if (e.basepoint) return y.basepoint_at(n);
  std::vector<int> top;
  for (int v = 0; v <= n; ++v) top.push_back(v);
  return evaluate(e.loop, disk(n).pair(e.sphere, delta_simplex(n, top)));
}

SuspLoopElement SuspComonadInstance::face(const SuspLoopElement& e, int i,
                                          const FiniteSimplicialSet& y) const {
  if (e.basepoint) return e;
  return pair(precompose(e.loop, coface_operator(e.loop.level, i)), sphere_.face(e.sphere, i), y);
}

SuspLoopElement SuspComonadInstance::degeneracy(const SuspLoopElement& e, int j,
                                                const FiniteSimplicialSet& y) const {
  if (e.basepoint) return e;
  return pair(precompose(e.loop, codegeneracy_operator(e.loop.level, j)),
              sphere_.degeneracy(e.sphere, j), y);
}

std::string SuspComonadInstance::describe(const SuspLoopElement& e,
                                          const FiniteSimplicialSet& y) const {
  if (e.basepoint) return "*";
  std::ostringstream os;
  os << "[{";
  const auto& d = disk(e.loop.level).complex();
  bool first = true;
  for (std::size_t g = 0; g < e.loop.assignment.size(); ++g) {
    if (g == d.basepoint()) continue;
    os << (first ? "" : ", ") << d.generator(g).id << " -> " << y.label(e.loop.assignment[g]);
    first = false;
  }
  os << "}, " << sphere_.label(e.sphere) << "]";
  return os.str();
}

SuspLoopElement KrCoalgebra::delta(const SimplexRef& s) const {
  const auto& value = coaction.at(s.gen);
  if (!value) {
    throw PreconditionError("coaction not tabulated on " + carrier->label(s));
  }
  SuspLoopElement out = *value;
  for (auto it = s.degens.rbegin(); it != s.degens.rend(); ++it) {
    out = comonad->degeneracy(out, *it, *carrier);
  }
  return out;
}

FiniteSimplicialSet suspend(const FiniteSimplicialSet& x, int r) { return smash(x, sphere(r)); }

std::vector<LoopElement> loops_level(const FiniteSimplicialSet& y, int r, int k) {
  return SuspComonadInstance(r, k).loops(y, k);
}

KrCoalgebra can_r(const FiniteSimplicialSet& x, int r, int bound) {
  KrCoalgebra c;
  c.comonad = std::make_shared<const SuspComonadInstance>(r, bound + r);
  c.suspension = std::make_shared<const SmashComplex>(x, c.comonad->sphere());
  c.carrier = std::shared_ptr<const FiniteSimplicialSet>(c.suspension, &c.suspension->complex());
  c.bound = bound;
  const auto& carrier = *c.carrier;
  c.coaction.resize(carrier.num_generators());
  for (std::size_t g = 0; g < carrier.num_generators(); ++g) {
    const SimplexRef s{g, {}};
    if (carrier.dim(s) > bound + r) continue;
    const auto comps = c.suspension->components(s);
    if (!comps) {
      c.coaction[g] = SuspLoopElement{};
      continue;
    }
    c.coaction[g] = c.comonad->pair(c.comonad->unit(*c.suspension, comps->first), comps->second, carrier);
  }
  return c;
}

namespace {

// delta(w(g)) against [t^* w, b] on every generator g = (b, t) of D_level.
std::optional<std::string> coassoc_mismatch(const KrCoalgebra& c, const LoopElement& w) {
  const auto& k = *c.comonad;
  const auto& d = k.disk(w.level);
  const auto& dc = d.complex();
  for (std::size_t g = 0; g < dc.num_generators(); ++g) {
    const SimplexRef ref{g, {}};
    const auto comps = d.components(ref);
    if (!comps) continue;
    const auto lhs = c.delta(k.evaluate(w, ref));
    const auto t = k.vertices(w.level, comps->second);
    const auto rhs = k.pair(k.precompose(w, t), comps->first, *c.carrier);
    if (lhs != rhs) {
      return "at " + dc.generator(g).id + ": " + k.describe(lhs, *c.carrier) + " vs " +
             k.describe(rhs, *c.carrier);
    }
  }
  return std::nullopt;
}

}  // namespace

KrReport check_kr_coalgebra(const KrCoalgebra& c) {
  KrReport rep;
  const auto& k = *c.comonad;
  const auto& x = *c.carrier;
  if (c.bound + k.r() > k.max_level() || c.coaction.size() != x.num_generators()) {
    rep.structure_ok = false;
    rep.failures.push_back("structure: coaction table does not match the carrier");
    return rep;
  }
  for (std::size_t g = 0; g < x.num_generators(); ++g) {
    const SimplexRef s{g, {}};
    const int n = x.dim(s);
    if (n > c.bound) continue;
    const std::string where = " at " + x.label(s);
    if (!c.coaction[g]) {
      rep.structure_ok = false;
      rep.failures.push_back("structure: missing coaction" + where);
      continue;
    }
    const auto& e = *c.coaction[g];
    if (!e.basepoint) {
      try {
        if (e.loop.level != n || k.sphere().dim(e.sphere) != n) {
          throw PreconditionError("level mismatch");
        }
        k.validate_loop(e.loop, x);
      } catch (const PreconditionError& err) {
        rep.structure_ok = false;
        rep.failures.push_back(std::string("structure: ") + err.what() + where);
        continue;
      }
    }
    if (k.counit(e, x, n) != s) {
      rep.counit_ok = false;
      rep.failures.push_back("counit" + where + ": eps(delta) = " + x.label(k.counit(e, x, n)));
    }
    for (int i = 0; n > 0 && i <= n; ++i) {
      if (c.delta(x.face(s, i)) != k.face(e, i, x)) {
        rep.simplicial_ok = false;
        rep.failures.push_back("simplicial" + where + ": d_" + std::to_string(i));
      }
    }
    if (!e.basepoint) {
      if (auto bad = coassoc_mismatch(c, e.loop)) {
        rep.coassoc_ok = false;
        rep.failures.push_back("coassociativity" + where + " " + *bad);
      }
    }
  }
  return rep;
}

namespace {

PrimitivesR build_levelwise(const SuspComonadInstance& k, const FiniteSimplicialSet& y,
                            std::vector<std::vector<LoopElement>> elements) {
  const int top = static_cast<int>(elements.size()) - 1;
  std::vector<std::map<LoopElement, std::size_t>> index(elements.size());
  for (std::size_t n = 0; n < elements.size(); ++n) {
    auto& lvl = elements[n];
    const auto c = k.constant(static_cast<int>(n), y);
    auto it = std::find(lvl.begin(), lvl.end(), c);
    if (it == lvl.end()) throw PreconditionError("primitives: constant loop missing");
    std::rotate(lvl.begin(), it, it + 1);
    for (std::size_t e = 0; e < lvl.size(); ++e) index[n][lvl[e]] = e;
  }
  auto lookup = [&](int n, const LoopElement& w) {
    auto it = index.at(n).find(w);
    if (it == index[n].end()) {
      throw PreconditionError("primitives: level " + std::to_string(n) +
                              " is not closed under the structure maps");
    }
    return it->second;
  };
  LevelwiseData data;
  data.max_level = top;
  for (const auto& lvl : elements) data.counts.push_back(lvl.size());
  data.face = [&](int n, std::size_t e, int i) {
    return lookup(n - 1, k.precompose(elements[n][e], coface_operator(n, i)));
  };
  data.degeneracy = [&](int n, std::size_t e, int j) {
    return lookup(n + 1, k.precompose(elements[n][e], codegeneracy_operator(n, j)));
  };
  data.basepoint = 0;
  data.label = [&](int n, std::size_t e) {
    return e == 0 ? std::string("*") : "L" + std::to_string(n) + "(" + std::to_string(e) + ")";
  };
  auto built = from_levels(data);
  return PrimitivesR{std::move(built.complex), std::move(elements), std::move(built.refs)};
}

}  // namespace

PrimitivesR primitives_r(const KrCoalgebra& c, int max_level) {
  if (max_level > c.bound) {
    throw PreconditionError("primitives_r: max_level exceeds the coalgebra bound");
  }
  std::vector<std::vector<LoopElement>> elements;
  for (int n = 0; n <= max_level; ++n) {
    auto& lvl = elements.emplace_back();
    for (auto& w : c.comonad->loops(*c.carrier, n)) {
      if (!coassoc_mismatch(c, w)) lvl.push_back(std::move(w));
    }
  }
  return build_levelwise(*c.comonad, *c.carrier, std::move(elements));
}

bool unit_is_bijective(const FiniteSimplicialSet& x, const KrCoalgebra& c, const PrimitivesR& p) {
  if (!c.suspension) throw PreconditionError("unit_is_bijective: coalgebra not built by can_r");
  for (std::size_t n = 0; n < p.elements.size(); ++n) {
    std::set<LoopElement> images;
    const auto& lvl = p.elements[n];
    const std::set<LoopElement> prim(lvl.begin(), lvl.end());
    const auto xs = x.simplices(static_cast<int>(n));
    for (const auto& s : xs) {
      auto w = c.comonad->unit(*c.suspension, s);
      if (!prim.count(w)) return false;
      images.insert(std::move(w));
    }
    if (images.size() != xs.size() || images.size() != prim.size()) return false;
  }
  return true;
}

PrimitivesR loop_space(const FiniteSimplicialSet& y, int r, int max_level) {
  SuspComonadInstance k(r, max_level);
  std::vector<std::vector<LoopElement>> elements;
  for (int n = 0; n <= max_level; ++n) elements.push_back(k.loops(y, n));
  return build_levelwise(k, y, std::move(elements));
}

ComonadLawReport check_kr_comonad_laws(const FiniteSimplicialSet& y, int r, int max_level) {
  ComonadLawReport rep;
  SuspComonadInstance k(r, max_level + r);
  for (int n = 0; n <= max_level; ++n) {
    for (const auto& w : k.loops(y, n)) {
      if (k.is_constant(w, y)) continue;  // [w, a] is the basepoint
      for (const auto& a : k.sphere().simplices(n)) {
        if (k.sphere().is_basepoint(a)) continue;
        ++rep.checked;
        const auto e = k.pair(w, a, y);
        // eps_{KY} Delta_Y [w, a] = [iota^* w, a].
        std::vector<int> top;
        for (int v = 0; v <= n; ++v) top.push_back(v);
        if (k.pair(k.precompose(w, top), a, y) != e) {
          rep.failures.push_back("eps_K Delta != id at " + k.describe(e, y));
        }
        // K(eps_Y) Delta_Y [w, a] = [eps_Y eta(w), a].
        const auto& d = k.disk(n);
        LoopElement back{n, {}};
        for (std::size_t g = 0; g < d.complex().num_generators(); ++g) {
          const auto comps = d.components(SimplexRef{g, {}});
          if (!comps) {
            back.assignment.push_back(y.basepoint_at(0));
            continue;
          }
          const auto t = k.vertices(n, comps->second);
          const auto inner = k.pair(k.precompose(w, t), comps->first, y);
          back.assignment.push_back(k.counit(inner, y, static_cast<int>(t.size()) - 1));
        }
        if (!(back == w)) rep.failures.push_back("K(eps) Delta != id at " + k.describe(e, y));
      }
    }
  }
  const auto omega = loop_space(y, r, max_level);
  const auto cofree = can_r(omega.complex, r, max_level);
  const auto laws = check_kr_coalgebra(cofree);
  for (const auto& f : laws.failures) rep.failures.push_back("cofree coalgebra: " + f);
  for (const auto& g : cofree.carrier->generators()) rep.checked += g.dim <= max_level ? 1 : 0;
  return rep;
}

ReflectIsoVerdict reflects_iso_check(const SSetMap& f, int r, int bound) {
  ReflectIsoVerdict v;
  auto first_failure = [](const SSetMap& m, int top) -> std::optional<int> {
    for (int n = 0; n <= top; ++n) {
      std::set<SimplexRef> images;
      for (const auto& s : m.source().simplices(n)) images.insert(m(s));
      if (images.size() != m.source().count(n) || images.size() != m.target().count(n)) return n;
    }
    return std::nullopt;
  };
  v.f_failure_level = first_failure(f, bound);
  v.f_iso = !v.f_failure_level;
  const auto s = std::make_shared<const FiniteSimplicialSet>(sphere(r));
  auto src = std::make_shared<const SmashComplex>(f.source(), *s);
  auto tgt = std::make_shared<const SmashComplex>(f.target(), *s);
  const auto sigma = smash_maps(f, identity_map(s), src, tgt);
  v.sigma_failure_level = first_failure(sigma, bound + r);
  v.sigma_f_iso = !v.sigma_failure_level;
  v.consistent = !v.sigma_f_iso || v.f_iso;
  return v;
}

SmashEqualizerReport smash_equalizer_commutes(const SSetMap& f, const SSetMap& g,
                                              const FiniteSimplicialSet& z, int bound) {
  SmashEqualizerReport rep;
  const auto zp = std::make_shared<const FiniteSimplicialSet>(z);
  auto src = std::make_shared<const SmashComplex>(f.source(), z);
  auto tgt = std::make_shared<const SmashComplex>(f.target(), z);
  const auto fz = smash_maps(f, identity_map(zp), src, tgt);
  const auto gz = smash_maps(g, identity_map(zp), src, tgt);
  const auto lhs = equalizer(fz, gz);

  const auto e = equalizer(f, g);
  auto ez = std::make_shared<const SmashComplex>(*e.complex, z);
  const auto incl = smash_maps(e.inclusion, identity_map(zp), ez, src);

  for (int n = 0; n <= bound; ++n) {
    std::set<SimplexRef> a, b;
    for (const auto& s : lhs.complex->simplices(n)) a.insert(lhs.inclusion(s));
    for (const auto& s : ez->complex().simplices(n)) b.insert(incl(s));
    rep.lhs_simplices += a.size();
    rep.rhs_simplices += b.size();
    if (a != b && !rep.failure_level) {
      rep.commutes = false;
      rep.failure_level = n;
    }
  }
  return rep;
}

}  // namespace hocoalg
