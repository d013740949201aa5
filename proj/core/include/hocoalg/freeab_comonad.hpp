// The comonad K = Z~U on simplicial abelian groups, acting on symbolic
// elements, and K-coalgebras over torsion-free finite-type carriers.
//
// A FreeElement of depth 0 is an integer combination of carrier basis
// vectors. Depth k + 1 elements are integer combinations of brackets [q]
// of nonzero depth-k elements q. The zero element is the basepoint of U(...).

#ifndef HOCOALG_FREEAB_COMONAD_HPP
#define HOCOALG_FREEAB_COMONAD_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hocoalg/intlinalg.hpp"
#include "hocoalg/sab.hpp"
#include "hocoalg/sset.hpp"

namespace hocoalg {

class FreeElement {
 public:
  struct Term {
    std::size_t basis = 0;                     // depth 0 atoms
    std::shared_ptr<const FreeElement> inner;  // depth >= 1 atoms
    Integer coeff;
  };

  FreeElement() = default;
  static FreeElement zero(int level, int depth);
  static FreeElement basis(int level, std::size_t index, const Integer& coeff = 1);
  static FreeElement from_vector(int level, const IntVector& v);
  /// [e]; the bracket of zero is zero.
  static FreeElement bracket(const FreeElement& e);
  /// Sums duplicate atoms and drops zero coefficients.
  static FreeElement from_terms(int level, int depth, std::vector<Term> terms);

  int level() const { return level_; }
  int depth() const { return depth_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coordinates of a depth-0 element.
  IntVector to_vector(std::size_t rank) const;

  FreeElement operator+(const FreeElement& o) const;
  FreeElement operator-(const FreeElement& o) const;
  FreeElement operator-() const;
  FreeElement scaled(const Integer& c) const;

  int compare(const FreeElement& o) const;
  bool operator==(const FreeElement& o) const { return compare(o) == 0; }
  bool operator!=(const FreeElement& o) const { return compare(o) != 0; }
  bool operator<(const FreeElement& o) const { return compare(o) < 0; }

  /// "3[e1] - [[e0 + 2e2]]"; depth-0 atoms print through `name` when given.
  std::string to_string(const std::function<std::string(std::size_t)>& name = {}) const;

 private:
  int level_ = 0;
  int depth_ = 0;
  std::vector<Term> terms_;
};

/// eps: strips the outer bracket. Throws PreconditionError at depth 0.
FreeElement counit(const FreeElement& e);
/// Delta: [q] -> [[q]]. Throws PreconditionError at depth 0.
FreeElement comultiply(const FreeElement& e);
/// K f : sum g[q] -> sum g[f(q)]. Throws PreconditionError at depth 0.
FreeElement apply_K(const FreeElement& e, const std::function<FreeElement(const FreeElement&)>& f);
/// Distinct inner elements of a depth-1 element (the set G_p).
std::vector<FreeElement> support(const FreeElement& e);

/// Simplicial structure of K^depth A on symbolic elements.
FreeElement face(const FreeElement& e, int i, const SimplicialAbelianGroup& carrier);
FreeElement degeneracy(const FreeElement& e, int j, const SimplicialAbelianGroup& carrier);

/// K-coalgebra with a finitely tabulated coaction on basis vectors.
struct KCoalgebra {
  SAbPtr carrier;
  std::vector<std::vector<FreeElement>> coaction;  // [level][basis index], depth 1
  std::vector<std::vector<std::string>> labels;    // optional basis names

  int bound() const { return carrier->bound; }
  /// Additive extension to a depth-0 element.
  FreeElement delta(const FreeElement& p) const;
  FreeElement delta(int level, const IntVector& v) const;
  /// K delta on elements of depth >= 1.
  FreeElement k_delta(const FreeElement& e) const;
  /// Shape problems (torsion, missing or mistyped entries), if any.
  std::optional<std::string> structural_error() const;
  std::function<std::string(std::size_t)> namer(int level) const;
};

KCoalgebra can(const FiniteSimplicialSet& x, int bound);

struct CoalgebraFailure {
  std::string law;  // "counit", "coassociativity", "simplicial", "structure"
  int level = 0;
  std::size_t basis_index = 0;
  std::string detail;
};

struct CoalgebraReport {
  bool counit_ok = true;
  bool coassoc_ok = true;
  bool simplicial_ok = true;
  bool structure_ok = true;
  std::vector<CoalgebraFailure> failures;
  bool ok() const { return counit_ok && coassoc_ok && simplicial_ok && structure_ok; }
};

CoalgebraReport check_coalgebra(const KCoalgebra& c);

struct SetlikeOptions {
  int coeff_box = 3;
  /// Box cross-check only when (2B + 1)^rank stays below this.
  std::size_t box_limit = 20000;
};

struct SetlikeResult {
  std::vector<IntVector> elements;  // sorted
  std::string route;                // "basis-diagonal" or "support"
  bool box_checked = false;         // exhaustive box search ran and agreed
  bool box_disagrees = false;
  int coeff_box = 0;
};

/// All q at level n with delta(q) = [q].
SetlikeResult setlike_elements(const KCoalgebra& c, int n, const SetlikeOptions& opts = {});

struct Primitives {
  FiniteSimplicialSet complex;
  /// Setlike vector of each element at each level; element 0 is the zero vector.
  std::vector<std::vector<IntVector>> elements;
  std::vector<std::vector<SimplexRef>> refs;
  std::vector<SetlikeResult> searches;
};

/// The simplicial set of setlike elements plus the basepoint 0. Throws
/// PreconditionError if the setlike elements are not closed under the
/// structure maps.
Primitives primitives(const KCoalgebra& c, const SetlikeOptions& opts = {});

struct SubcoalgebraReport {
  bool independent = true;
  bool contains_w = true;
  bool restricted_is_eta = true;
  std::vector<std::string> failures;
  bool ok() const { return independent && contains_w && restricted_is_eta; }
};

struct Subcoalgebra {
  KCoalgebra sub;  // carrier Z~G^_W with coaction [q]
  /// generators[n]: the elements of G^_W at level n as carrier vectors.
  std::vector<std::vector<IntVector>> generators;
  SAbMap inclusion;
  SubcoalgebraReport report;
};

/// Element of the carrier at a given level.
struct LevelElement {
  int level = 0;
  IntVector vector;
};

Subcoalgebra subcoalgebra_generated(const KCoalgebra& c, const std::vector<LevelElement>& w);

struct RecoveredBasis {
  bool ok = false;
  std::string message;
  Primitives primitives;
  KCoalgebra canonical;  // can(X')
  SAbMap iso;            // carrier of can(X') -> carrier of C
};

RecoveredBasis recover_basis(const KCoalgebra& c, const SetlikeOptions& opts = {});

/// The same coalgebra presented on a new basis: column j of change[n] is the
/// j-th new basis vector in old coordinates. Each change[n] must be unimodular.
KCoalgebra change_basis(const KCoalgebra& c, const std::vector<IntMatrix>& change);

}  // namespace hocoalg

#endif  // HOCOALG_FREEAB_COMONAD_HPP
