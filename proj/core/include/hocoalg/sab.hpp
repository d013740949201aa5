// Simplicial abelian groups of finite type, stored up to a degree bound,
// with Dold-Kan in both directions.
//
// Every level is a based group Z^a / diag(moduli): modulus 0 means a free
// generator, t >= 2 a generator of order t. Structure maps are integer
// matrices whose rows are kept reduced modulo the target moduli.

#ifndef HOCOALG_SAB_HPP
#define HOCOALG_SAB_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hocoalg/intlinalg.hpp"
#include "hocoalg/sset.hpp"

namespace hocoalg {

using Moduli = std::vector<Integer>;

struct SimplicialAbelianGroup {
  int bound = 0;                             // levels 0..bound are stored
  std::vector<Moduli> levels;                // bound + 1 entries
  std::vector<std::vector<IntMatrix>> faces; // faces[n][i] : n -> n-1 (empty for n = 0)
  std::vector<std::vector<IntMatrix>> degens;// degens[n][j] : n -> n+1 for n < bound

  std::size_t rank(int n) const { return levels.at(n).size(); }
  AbelianGroup group(int n) const { return AbelianGroup::from_moduli(levels.at(n)); }

  /// First violated identity or ill-defined structure map, if any.
  std::optional<std::string> check() const;
};

using SAbPtr = std::shared_ptr<const SimplicialAbelianGroup>;

struct SAbMap {
  SAbPtr source;
  SAbPtr target;
  std::vector<IntMatrix> components;  // one per level up to min bound

  int bound() const { return static_cast<int>(components.size()) - 1; }
  std::optional<std::string> check() const;
};

struct ChainComplex {
  std::vector<Moduli> terms;
  std::vector<IntMatrix> d;  // d[n] : C_n -> C_{n-1}; d[0] has zero rows

  int top() const { return static_cast<int>(terms.size()) - 1; }
  std::optional<std::string> check() const;
};

struct ChainMap {
  std::vector<IntMatrix> components;
};

bool equal_mod(const IntMatrix& a, const IntMatrix& b, const Moduli& target);
/// a * b reduced modulo the target moduli of a.
IntMatrix compose_mod(const IntMatrix& a, const IntMatrix& b, const Moduli& target);

SimplicialAbelianGroup zero_sab(int bound);
/// Constant simplicial group on Z^a / diag(moduli).
SimplicialAbelianGroup constant_sab(const Moduli& moduli, int bound);
SimplicialAbelianGroup direct_sum(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);

SAbMap identity(SAbPtr a);
SAbMap zero_map(SAbPtr a, SAbPtr b);
SAbMap compose(const SAbMap& g, const SAbMap& f);
/// Equal components modulo the target relations.
bool equal_maps(const SAbMap& f, const SAbMap& g);

/// Basis of Z~x: non-basepoint simplices of each level, in simplices() order.
class ReducedBasis {
 public:
  ReducedBasis(const FiniteSimplicialSet& x, int bound);
  const std::vector<SimplexRef>& level(int n) const { return basis_.at(n); }
  /// nullopt for the basepoint simplex.
  std::optional<std::size_t> index(int n, const SimplexRef& r) const;

 private:
  std::vector<std::vector<SimplexRef>> basis_;
  std::vector<std::unordered_map<SimplexRef, std::size_t, SimplexRefHash>> pos_;
};

/// Reduced free abelian group on x.
SimplicialAbelianGroup free_reduced(const FiniteSimplicialSet& x, int bound);
/// Z~f.
SAbMap free_reduced_map(const SSetMap& f, SAbPtr source, SAbPtr target);

/// N A together with each N_n as a subgroup of A_n.
struct NormalizedChains {
  ChainComplex complex;
  std::vector<Subgroup> inclusion;
};

NormalizedChains normalized_chains(const SimplicialAbelianGroup& a);
/// N f between already computed normalized chains.
ChainMap normalized_map(const SAbMap& f, const NormalizedChains& source,
                        const NormalizedChains& target);

/// H_n with its cycle subgroup and the presentation of cycles / boundaries.
struct Homology {
  Subgroup cycles;
  DiagonalForm presentation;
  AbelianGroup group() const { return presentation.group(); }
};

/// Degrees above top() are treated as zero.
Homology homology(const ChainComplex& c, int n);
/// Matrix of the induced map H_n(C) -> H_n(D).
IntMatrix induced_on_homology(const ChainMap& f, const ChainComplex& c, const ChainComplex& d,
                              int n);

/// pi_n(A) = H_n(N A); needs A stored to degree n + 1.
AbelianGroup homotopy_group(const SimplicialAbelianGroup& a, int n);
/// f induces isomorphisms on pi_m for every m <= n (needs bounds >= n + 1).
/// The first degree where it fails is returned.
std::optional<int> first_pi_failure(const SAbMap& f, int n);

/// G (x) Z~S^n, for G given by its moduli.
SimplicialAbelianGroup eilenberg_maclane(const Moduli& g, int n, int bound);
SimplicialAbelianGroup eilenberg_maclane(const AbelianGroup& g, int n, int bound);

/// Order surjections [n] ->> [k] as their sets of repeated positions
/// {j : eta(j) = eta(j+1)}; every level of Gamma is indexed by these.
std::vector<std::vector<int>> surjections(int n, int k);

SimplicialAbelianGroup dold_kan_inverse(const ChainComplex& c, int bound);
/// Gamma applied to a chain map, between the given Gamma objects.
SAbMap dold_kan_inverse_map(const ChainMap& f, const ChainComplex& c, const ChainComplex& d,
                            SAbPtr gc, SAbPtr gd);
/// The Dold-Kan isomorphism Gamma N A -> A.
SAbMap dold_kan_counit(SAbPtr a, const NormalizedChains& na, SAbPtr gamma_na);
/// Levelwise inverse of an isomorphism of based groups. Throws
/// PreconditionError if some level is not invertible.
SAbMap inverse(const SAbMap& f);

struct PathObject {
  SAbPtr path;
  SAbMap projection;
};

/// Gamma of the cone P_0 = C_1, P_n = C_n + C_{n+1}, d(a, b) = (da, a - db)
/// over C = N A, with projection (a, b) -> a and P_0 -> C_0 given by d.
PathObject path_object(SAbPtr a);

/// Degrees n in [1, bound] with N(f)_n not onto; empty means fibration.
std::vector<int> fibration_failures(const SAbMap& f);
bool is_fibration(const SAbMap& f);

struct Pullback {
  SAbPtr object;
  SAbMap to_left;
  SAbMap to_right;
  std::vector<Subgroup> levels;  // level n as a subgroup of A_n + B_n
};

/// A x_C B for f : A -> C, g : B -> C. Throws PreconditionError on target mismatch.
Pullback pullback(const SAbMap& f, const SAbMap& g);

struct Truncation {
  SAbPtr stage;
  SAbMap map;  // A -> stage
};

/// Gamma of the good truncation tau_{<= n} N A.
Truncation postnikov_truncation(SAbPtr a, int n);

}  // namespace hocoalg

#endif  // HOCOALG_SAB_HPP
