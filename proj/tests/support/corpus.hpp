#ifndef HOCOALG_TESTS_CORPUS_HPP
#define HOCOALG_TESTS_CORPUS_HPP

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hocoalg/freeab_comonad.hpp"
#include "hocoalg/intlinalg.hpp"
#include "hocoalg/sab.hpp"
#include "hocoalg/sset.hpp"

namespace hocoalg::testing {

struct NamedComplex {
  std::string name;
  FiniteSimplicialSet complex;
};

/// One vertex, a loop a and a 2-cell with faces (a, s0 *, a).
FiniteSimplicialSet rp2();

/// pt, S1, S2, S1vS1, S1vS2, S1xS1, S1^S1, RP2.
std::vector<NamedComplex> corpus();
FiniteSimplicialSet corpus_member(const std::string& name);

/// S1 v S1 -> S1, both circles onto the circle.
SSetMap fold_map();
/// Constant map at the basepoint.
SSetMap constant_map(std::shared_ptr<const FiniteSimplicialSet> x,
                     std::shared_ptr<const FiniteSimplicialSet> y);

/// Reduced homology of x by the unnormalized chain complex Z[X_n] / Z[*]
/// and a separate 64-bit Smith reduction; degrees 0..max_degree.
std::vector<AbelianGroup> oracle_reduced_homology(const FiniteSimplicialSet& x, int max_degree);

/// Nonzero element of the given depth over `atoms` level-0 basis vectors.
FreeElement random_free_element(std::mt19937_64& rng, int depth, std::size_t atoms = 4);

/// Sum of Z[n] and (Z --k--> Z)[n, n-1] pieces, at most three generators per
/// degree, conjugated by a random shear in every degree.
ChainComplex random_chain_complex(std::mt19937_64& rng, int top);

/// Complexes of free abelian groups of finite rank are sums of elementary
/// pieces, so ranks and the invariant factors of every differential decide
/// isomorphism. Returns the first difference.
std::optional<std::string> free_complex_difference(const ChainComplex& a, const ChainComplex& b);

/// `size` random elements of the carrier of c, one or two terms each with
/// coefficients in [-box, box].
std::vector<LevelElement> random_w(const KCoalgebra& c, std::mt19937_64& rng, int size, int box);

}  // namespace hocoalg::testing

#endif  // HOCOALG_TESTS_CORPUS_HPP
