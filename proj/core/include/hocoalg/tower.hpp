// Towers: the cobar resolution of the monad U Z~, restricted totalization of
// finite-type semicosimplicial simplicial abelian groups, and Postnikov towers.
//
// Cobar conventions. Codegree m of cobar(X) is (U Z~)^{m+1} X at a fixed
// simplicial level, represented by FreeElements of depth m whose atoms are
// reduced basis simplices of X. With T = U Z~, eta : 1 -> T and mu : TT -> T,
//
//   d^i = T^i eta T^{m+1-i}   d^0 brackets the whole element, d^{m+1} wraps
//                              every ground atom, d^i brackets at depth i;
//   s^j = T^j mu T^{m-j}      strips the brackets at depth j.
//
// Contraction. The extra codegeneracy lives on the decalage D^m = C^{m+1}
// (cofaces d^{i+1}, codegeneracies s^{j+1}, coaugmentation d^1 : C^0 -> C^1)
// and is s^0 itself. Unwinding the identities of a contraction
// s^{-1} delta^0 = id, s^{-1} delta^{i+1} = delta^i s^{-1},
// s^{-1} sigma^{j+1} = sigma^j s^{-1} in terms of the cobar maps gives
//
//   X0  s^0 d^0 = id                       (mu . eta T = id)
//   X1  s^0 d^1 = id                       (mu . T eta = id)
//   X2  s^0 d^{i+2} = d^{i+1} s^0, i >= 0  (naturality of mu)
//   X3  s^0 s^{j+2} = s^{j+1} s^0, j >= 0  (associativity of mu)
//
// On C itself s^0 is not a contraction: s^0 d^1 = d^0 s^0 already fails,
// which is why the check runs on the decalage.

#ifndef HOCOALG_TOWER_HPP
#define HOCOALG_TOWER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hocoalg/freeab_comonad.hpp"
#include "hocoalg/intlinalg.hpp"
#include "hocoalg/sab.hpp"
#include "hocoalg/sset.hpp"

namespace hocoalg {

FreeElement cobar_coface(const FreeElement& e, int i);
FreeElement cobar_codegeneracy(const FreeElement& e, int j);

/// Cosimplicial object given by symbolic maps; the members can be replaced,
/// e.g. to test that a broken object is caught.
struct SymbolicCosimplicial {
  std::shared_ptr<const FiniteSimplicialSet> x;
  SAbPtr carrier;  // Z~X, which supplies the simplicial structure
  int max_codegree = 0;
  int degree_bound = 0;
  std::function<FreeElement(const FreeElement&, int)> coface;        // (e, i)
  std::function<FreeElement(const FreeElement&, int)> codegeneracy;  // (e, j)
  std::function<FreeElement(int, const SimplexRef&)> coaugmentation; // (level, x)
  std::shared_ptr<const ReducedBasis> basis;
};

SymbolicCosimplicial cobar(const FiniteSimplicialSet& x, int max_codegree, int degree_bound);

/// Random element of codegree m at simplicial level n.
FreeElement random_cobar_element(const SymbolicCosimplicial& obj, int m, int n,
                                 std::mt19937_64& rng);

struct IdentityTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<std::string> witness;
};

struct IdentityReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;  // sampled elements
  std::vector<IdentityTally> tallies;
  bool ok() const;
  std::size_t checked() const;
};

/// Cosimplicial identities, coaugmentation equalization and compatibility
/// with the simplicial faces, on `samples` elements per codegree and level.
IdentityReport check_cosimplicial_identities(const SymbolicCosimplicial& obj, std::size_t samples,
                                             std::uint64_t seed);
/// X0..X3 above, each tallied separately.
IdentityReport check_contraction(const SymbolicCosimplicial& obj, std::size_t samples,
                                 std::uint64_t seed);

/// Finite-type semicosimplicial simplicial abelian group Z^0 .. Z^M.
struct MatrixSemiCosimplicial {
  std::vector<SAbPtr> codegrees;
  std::vector<std::vector<SAbMap>> cofaces;  // cofaces[m][i] : Z^m -> Z^{m+1}, i <= m + 1
};

/// Exhaustive check of d^j d^i = d^i d^{j-1} (i < j) and of every coface map.
IdentityReport check_cosimplicial_identities(const MatrixSemiCosimplicial& obj);

/// Z^m = a for every m with identity cofaces.
MatrixSemiCosimplicial constant_cosimplicial(SAbPtr a, int max_codegree);
/// Z^m = a^{m+1}, d^i inserting a zero summand at position i.
MatrixSemiCosimplicial insertion_cosimplicial(SAbPtr a, int max_codegree);

/// The cotensor A^S: level k is Hom(S x Delta^k, U A), stored as a subgroup of
/// the sum of A_{dim sigma} over the maximal generators sigma of S x Delta^k
/// (those that are not a face of another generator).
struct Cotensor {
  SAbPtr object;
  SAbPtr values;  // A
  std::shared_ptr<const FiniteSimplicialSet> shape;
  std::vector<std::shared_ptr<const ProductComplex>> products;
  std::vector<Subgroup> levels;
  std::vector<std::vector<std::size_t>> maximal;   // [k] -> maximal generators
  std::vector<std::vector<std::size_t>> offsets;   // [k][i] -> first coordinate of maximal[k][i]
  std::vector<std::vector<IntMatrix>> generator_values;  // [k][g]: ambient -> A_{dim g}
};

/// Needs a stored to degree dim(s) + degree_bound.
Cotensor cotensor(SAbPtr a, std::shared_ptr<const FiniteSimplicialSet> s, int degree_bound);
/// z -> z . (f x id).
SAbMap cotensor_restriction(const Cotensor& source, const Cotensor& target, const SSetMap& f);
/// z -> phi . z.
SAbMap cotensor_postcompose(const Cotensor& source, const Cotensor& target, const SAbMap& phi);

struct TotStage {
  int n = 0;
  SAbPtr object;
  SAbMap to_previous;  // empty components for n = 0
  SAbMap top;          // Tot^res_n -> (Z^n)^{Delta^n}
  Cotensor top_cotensor;
  std::optional<Pullback> square;
  bool fibration = true;
};

/// Stages 0..n. Codegree m must be stored to degree m + degree_bound.
std::vector<TotStage> tot_res_tower(const MatrixSemiCosimplicial& obj, int n, int degree_bound);
TotStage tot_res_stage(const MatrixSemiCosimplicial& obj, int n, int degree_bound);
/// Evaluation (Z^0)^{Delta^0} -> Z^0 at the top simplex; an isomorphism.
SAbMap tot_res_zero_evaluation(const TotStage& stage0, SAbPtr z0);

/// The map g with g . f = h, for f levelwise onto and ker f inside ker h.
/// Throws PreconditionError when no such map exists.
SAbMap factor_through(const SAbMap& f, const SAbMap& h);

/// pi_0 .. pi_{bound-1}.
std::vector<AbelianGroup> homotopy_table(const SimplicialAbelianGroup& a);

struct PostnikovStage {
  int n = 0;
  SAbPtr object;
  std::optional<SAbMap> to_previous;
  std::optional<SAbMap> from_source;  // abelian carrier: A -> X<n>
  // Pullback witnesses of a tower assembled from k-invariants.
  std::optional<SAbMap> k_invariant;  // X<n-1> -> K(pi_n, n+1)
  std::optional<PathObject> path;
  std::optional<Pullback> square;
  std::vector<AbelianGroup> pi;
};

struct PostnikovTower {
  int degree_bound = 0;
  std::vector<PostnikovStage> stages;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Stages X<0> .. X<degree_bound - 1> of an abelian carrier stored to
/// degree_bound, by good truncation. Verifies fibrations and pi tables.
PostnikovTower postnikov_tower(SAbPtr a, int degree_bound);

/// A k-invariant X<n-1> -> K(group, n+1); no components means the zero map.
struct KInvariantInput {
  int degree = 0;
  Moduli group;
  std::optional<std::vector<IntMatrix>> components;
};

/// Tower of a 1-reduced simplicial set from X<2> = K(pi2, 2) and supplied
/// k-invariants for degrees 3, 4, ...; stages stored to degree_bound.
/// Throws PreconditionError unless x is 1-reduced, InputError for a
/// malformed k-invariant.
PostnikovTower postnikov_tower(const FiniteSimplicialSet& x, const Moduli& pi2,
                               const std::vector<KInvariantInput>& k_invariants, int degree_bound);

/// Pullback square commutes and test cones (pairs with equal images in the
/// corner) factor uniquely; sampled levelwise.
std::optional<std::string> verify_pullback(const Pullback& p, const SAbMap& f, const SAbMap& g,
                                           std::size_t samples, std::uint64_t seed);

struct FibrantReplacementReport {
  int degree_bound = 0;
  bool certified = false;
  std::optional<int> failure_degree;
  std::vector<AbelianGroup> source_pi;
  std::vector<std::vector<AbelianGroup>> stage_pi;
};

/// A -> X<N> is a pi-isomorphism in degrees <= N - 1, N = degree_bound.
/// Throws PreconditionError unless A is 1-connected; A must be stored to
/// degree max(N, 2).
FibrantReplacementReport fibrant_replacement_report(SAbPtr a, int degree_bound);

}  // namespace hocoalg

#endif  // HOCOALG_TOWER_HPP
