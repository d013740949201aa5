// The comonads K_r = Sigma^r Omega^r on pointed simplicial sets.
//
// Omega^r Y in level k is the set of pointed maps D_k -> Y, where
// D_k = S^r ^ Delta^k_+. An element of (Sigma^r Omega^r Y)_n is either the
// basepoint or a pair [w, a] of a non-constant loop w in level n and a
// non-basepoint n-simplex a of S^r.

#ifndef HOCOALG_SUSP_COMONAD_HPP
#define HOCOALG_SUSP_COMONAD_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hocoalg/sset.hpp"

namespace hocoalg {

struct LoopElement {
  int level = 0;
  std::vector<SimplexRef> assignment;  // one image per generator of D_level

  bool operator==(const LoopElement& o) const {
    return level == o.level && assignment == o.assignment;
  }
  bool operator<(const LoopElement& o) const {
    return level != o.level ? level < o.level : assignment < o.assignment;
  }
};

struct SuspLoopElement {
  bool basepoint = true;
  LoopElement loop;
  SimplexRef sphere;

  bool operator==(const SuspLoopElement& o) const {
    if (basepoint || o.basepoint) return basepoint == o.basepoint;
    return loop == o.loop && sphere == o.sphere;
  }
  bool operator!=(const SuspLoopElement& o) const { return !(*this == o); }
};

/// S^r together with the test objects D_k for k <= max_level.
class SuspComonadInstance {
 public:
  SuspComonadInstance(int r, int max_level);

  int r() const { return r_; }
  int max_level() const { return static_cast<int>(disks_.size()) - 1; }
  const FiniteSimplicialSet& sphere() const { return sphere_; }
  const SmashComplex& disk(int k) const { return *disks_.at(k); }
  std::shared_ptr<const FiniteSimplicialSet> disk_complex(int k) const;

  /// Simplex of Delta^n_+ for a monotone vertex sequence into [n].
  SimplexRef delta_simplex(int n, const std::vector<int>& vertices) const;
  /// Vertex sequence of a non-basepoint simplex of Delta^n_+.
  std::vector<int> vertices(int n, const SimplexRef& t) const;

  /// The value of w on a simplex of D_level.
  SimplexRef evaluate(const LoopElement& w, const SimplexRef& d) const;
  /// theta^* w for monotone theta : [m] -> [w.level].
  LoopElement precompose(const LoopElement& w, const std::vector<int>& theta) const;
  LoopElement constant(int k, const FiniteSimplicialSet& y) const;
  bool is_constant(const LoopElement& w, const FiniteSimplicialSet& y) const;

  /// All loops of Omega^r y in level k.
  std::vector<LoopElement> loops(const FiniteSimplicialSet& y, int k) const;
  /// Throws PreconditionError unless w is a pointed simplicial map D_k -> y.
  void validate_loop(const LoopElement& w, const FiniteSimplicialSet& y) const;

  /// eta_X(x) : D_n -> X ^ S^r, (b, t) -> [t^* x, b].
  LoopElement unit(const SmashComplex& suspension, const SimplexRef& x) const;
  /// [w, a], or the basepoint when w is constant or a is the basepoint.
  SuspLoopElement pair(const LoopElement& w, const SimplexRef& a, const FiniteSimplicialSet& y) const;
  /// eps_Y [w, a] = w(a, iota_n).
  SimplexRef counit(const SuspLoopElement& e, const FiniteSimplicialSet& y, int n) const;
  SuspLoopElement face(const SuspLoopElement& e, int i, const FiniteSimplicialSet& y) const;
  SuspLoopElement degeneracy(const SuspLoopElement& e, int j, const FiniteSimplicialSet& y) const;

  std::string describe(const SuspLoopElement& e, const FiniteSimplicialSet& y) const;

 private:
  int r_;
  FiniteSimplicialSet sphere_;
  std::vector<std::shared_ptr<const SmashComplex>> disks_;
  std::vector<std::shared_ptr<const FiniteSimplicialSet>> disk_complexes_;
  // Per disk generator: (sphere component, vertex sequence), or none at the basepoint.
  std::vector<std::vector<std::optional<std::pair<SimplexRef, std::vector<int>>>>> comps_;
  std::vector<FiniteSimplicialSet> simplices_;  // Delta^n_+
};

/// K_r-coalgebra checked on levels <= bound. Loops of level n involve carrier
/// simplices up to dimension n + r, so the coaction is tabulated on
/// generators of dimension <= bound + r and the instance reaches bound + r.
struct KrCoalgebra {
  std::shared_ptr<const SuspComonadInstance> comonad;
  std::shared_ptr<const FiniteSimplicialSet> carrier;
  int bound = 0;
  std::vector<std::optional<SuspLoopElement>> coaction;  // by carrier generator
  /// Set by can_r: the suspension X ^ S^r the carrier was built from.
  std::shared_ptr<const SmashComplex> suspension;

  /// delta extended to degenerate simplices.
  SuspLoopElement delta(const SimplexRef& s) const;
};

FiniteSimplicialSet suspend(const FiniteSimplicialSet& x, int r);
std::vector<LoopElement> loops_level(const FiniteSimplicialSet& y, int r, int k);

KrCoalgebra can_r(const FiniteSimplicialSet& x, int r, int bound);

struct KrReport {
  bool counit_ok = true;
  bool coassoc_ok = true;
  bool simplicial_ok = true;
  bool structure_ok = true;
  std::vector<std::string> failures;
  bool ok() const { return counit_ok && coassoc_ok && simplicial_ok && structure_ok; }
};

KrReport check_kr_coalgebra(const KrCoalgebra& c);

struct PrimitivesR {
  FiniteSimplicialSet complex;
  std::vector<std::vector<LoopElement>> elements;  // element 0 of each level is constant
  std::vector<std::vector<SimplexRef>> refs;
};

/// Levelwise equalizer of eta_{Omega^r Y} and Omega^r delta, levels <= max_level.
PrimitivesR primitives_r(const KrCoalgebra& c, int max_level);
/// For c = can_r(x): x -> primitives_r(c), x -> eta_x(x) is a bijection on
/// every level <= max_level of p.
bool unit_is_bijective(const FiniteSimplicialSet& x, const KrCoalgebra& c, const PrimitivesR& p);

/// Omega^r y through level max_level as a finite simplicial set.
PrimitivesR loop_space(const FiniteSimplicialSet& y, int r, int max_level);

struct ComonadLawReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// eps_{KY} Delta_Y = id and K(eps_Y) Delta_Y = id on every element of
/// (Sigma^r Omega^r Y)_n, n <= max_level, plus the coalgebra laws of
/// can_r of Omega^r Y truncated at max_level, which is the cofree coalgebra
/// (Sigma^r Omega^r Y, Delta_Y) on those levels.
ComonadLawReport check_kr_comonad_laws(const FiniteSimplicialSet& y, int r, int max_level);

struct ReflectIsoVerdict {
  bool f_iso = false;
  bool sigma_f_iso = false;
  bool consistent = true;
  std::optional<int> f_failure_level;
  std::optional<int> sigma_failure_level;
};

/// f checked on levels <= bound, Sigma^r f on levels <= bound + r.
ReflectIsoVerdict reflects_iso_check(const SSetMap& f, int r, int bound);

struct SmashEqualizerReport {
  bool commutes = true;
  std::optional<int> failure_level;
  std::size_t lhs_simplices = 0;
  std::size_t rhs_simplices = 0;
};

SmashEqualizerReport smash_equalizer_commutes(const SSetMap& f, const SSetMap& g,
                                              const FiniteSimplicialSet& z, int bound);

}  // namespace hocoalg

#endif  // HOCOALG_SUSP_COMONAD_HPP
