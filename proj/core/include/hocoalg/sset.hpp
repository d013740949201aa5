// Finite pointed simplicial sets in Eilenberg-Zilber normal form.
//
// A simplex is a nondegenerate generator together with a strictly decreasing
// degeneracy word: {g, [i1, ..., ik]} stands for s_{i1} ... s_{ik} g.

#ifndef HOCOALG_SSET_HPP
#define HOCOALG_SSET_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hocoalg {

struct SimplexRef {
  std::size_t gen = 0;
  std::vector<int> degens;  // strictly decreasing, outermost first

  bool operator==(const SimplexRef& o) const { return gen == o.gen && degens == o.degens; }
  bool operator!=(const SimplexRef& o) const { return !(*this == o); }
  bool operator<(const SimplexRef& o) const {
    return gen != o.gen ? gen < o.gen : degens < o.degens;
  }
};

struct SimplexRefHash {
  std::size_t operator()(const SimplexRef& r) const noexcept {
    std::size_t h = std::hash<std::size_t>()(r.gen) * 0x9e3779b97f4a7c15ULL;
    for (int d : r.degens) h = (h ^ static_cast<std::size_t>(d + 1)) * 0x100000001b3ULL;
    return h;
  }
};

struct Generator {
  std::string id;
  int dim = 0;
  std::vector<SimplexRef> faces;  // dim + 1 entries (none for vertices)
};

class FiniteSimplicialSet {
 public:
  FiniteSimplicialSet() = default;

  /// Validates shapes and the simplicial identities; throws InputError.
  FiniteSimplicialSet(std::vector<Generator> generators, std::size_t basepoint);
  /// Same, with the basepoint given by id.
  static FiniteSimplicialSet from_ids(std::vector<Generator> generators,
                                      const std::string& basepoint);

  std::size_t num_generators() const { return gens_.size(); }
  const Generator& generator(std::size_t g) const { return gens_.at(g); }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t basepoint() const { return basepoint_; }
  int max_dim() const { return max_dim_; }

  int dim(const SimplexRef& r) const;
  bool is_basepoint(const SimplexRef& r) const { return r.gen == basepoint_; }
  SimplexRef basepoint_at(int n) const;

  SimplexRef face(const SimplexRef& r, int i) const;
  SimplexRef degeneracy(const SimplexRef& r, int j) const;
  /// theta^* r for a monotone theta : [m] -> [dim r], given by its values.
  SimplexRef apply_operator(const SimplexRef& r, const std::vector<int>& theta) const;

  /// All simplices of level n in a fixed order: generator index, then
  /// degeneracy words in decreasing lexicographic order.
  std::vector<SimplexRef> simplices(int n) const;
  std::size_t count(int n) const;
  /// Generators of dimension n.
  std::vector<std::size_t> generators_of_dim(int n) const;

  /// Renders a simplex as "s1s0.id" or "id".
  std::string label(const SimplexRef& r) const;

 private:
  void validate() const;

  std::vector<Generator> gens_;
  std::size_t basepoint_ = 0;
  int max_dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Apply s_j to a canonical degeneracy word.
std::vector<int> degenerate_word(const std::vector<int>& word, int j);

/// Position of a simplex within simplices(n), for repeated lookups.
class LevelIndex {
 public:
  LevelIndex(const FiniteSimplicialSet& x, int max_level);
  const std::vector<SimplexRef>& level(int n) const { return levels_.at(n); }
  std::size_t index(int n, const SimplexRef& r) const;
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }

 private:
  std::vector<std::vector<SimplexRef>> levels_;
  std::vector<std::unordered_map<SimplexRef, std::size_t, SimplexRefHash>> pos_;
};

class SSetMap {
 public:
  SSetMap() = default;
  /// Throws InputError unless the assignment is a pointed simplicial map.
  SSetMap(std::shared_ptr<const FiniteSimplicialSet> source,
          std::shared_ptr<const FiniteSimplicialSet> target,
          std::vector<SimplexRef> assignment);

  const FiniteSimplicialSet& source() const { return *source_; }
  const FiniteSimplicialSet& target() const { return *target_; }
  const std::shared_ptr<const FiniteSimplicialSet>& source_ptr() const { return source_; }
  const std::shared_ptr<const FiniteSimplicialSet>& target_ptr() const { return target_; }
  const std::vector<SimplexRef>& assignment() const { return assignment_; }

  SimplexRef operator()(const SimplexRef& r) const;
  bool operator==(const SSetMap& o) const { return assignment_ == o.assignment_; }

 private:
  std::shared_ptr<const FiniteSimplicialSet> source_;
  std::shared_ptr<const FiniteSimplicialSet> target_;
  std::vector<SimplexRef> assignment_;
};

/// Identity map of x.
SSetMap identity_map(std::shared_ptr<const FiniteSimplicialSet> x);
/// g after f.
SSetMap compose(const SSetMap& g, const SSetMap& f);

FiniteSimplicialSet point();
FiniteSimplicialSet standard_simplex(int n);
/// Boundary of the n-simplex, n >= 1, based at vertex 0.
FiniteSimplicialSet boundary(int n);
/// Delta^n / boundary, one 0-cell and one n-cell.
FiniteSimplicialSet sphere(int n);
/// Vertex sequence of a simplex of standard_simplex(n) or its add_basepoint.
std::vector<int> simplex_vertices(const FiniteSimplicialSet& delta, const SimplexRef& r);
/// Simplex of standard_simplex(n) (or its add_basepoint) with a monotone
/// vertex sequence. Throws PreconditionError if no such simplex exists.
SimplexRef simplex_with_vertices(const FiniteSimplicialSet& delta, const std::vector<int>& v);
/// The monotone maps [n-1] -> [n] missing i, and [n+1] -> [n] repeating j.
std::vector<int> coface_operator(int n, int i);
std::vector<int> codegeneracy_operator(int n, int j);
/// x with a disjoint basepoint "+" added.
FiniteSimplicialSet add_basepoint(const FiniteSimplicialSet& x);

/// Cartesian product with its pair normalization.
class ProductComplex {
 public:
  ProductComplex(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y,
                 std::optional<int> max_dim = std::nullopt);

  const FiniteSimplicialSet& complex() const { return prod_; }
  const FiniteSimplicialSet& left() const { return x_; }
  const FiniteSimplicialSet& right() const { return y_; }
  /// The product simplex (x, y); both components of equal dimension.
  SimplexRef pair(const SimplexRef& x, const SimplexRef& y) const;
  std::pair<SimplexRef, SimplexRef> components(const SimplexRef& p) const;

 private:
  FiniteSimplicialSet x_;
  FiniteSimplicialSet y_;
  FiniteSimplicialSet prod_;
  std::vector<std::pair<SimplexRef, SimplexRef>> comps_;
  std::map<std::pair<SimplexRef, SimplexRef>, std::size_t> lookup_;
};

/// Smash product x ^ y = (x * y) / (x v y).
class SmashComplex {
 public:
  SmashComplex(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y,
               std::optional<int> max_dim = std::nullopt);

  const FiniteSimplicialSet& complex() const { return smash_; }
  const ProductComplex& product() const { return prod_; }
  /// Image of (x, y); the basepoint when either component is.
  SimplexRef pair(const SimplexRef& x, const SimplexRef& y) const;
  /// Components of a non-basepoint simplex.
  std::optional<std::pair<SimplexRef, SimplexRef>> components(const SimplexRef& s) const;

 private:
  ProductComplex prod_;
  FiniteSimplicialSet smash_;
  std::vector<std::size_t> to_smash_;   // product generator -> smash generator
  std::vector<std::size_t> from_smash_; // smash generator -> product generator
};

FiniteSimplicialSet product(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y);
FiniteSimplicialSet smash(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y);
FiniteSimplicialSet wedge(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y);

/// f ^ g between smash products.
SSetMap smash_maps(const SSetMap& f, const SSetMap& g,
                   std::shared_ptr<const SmashComplex> source,
                   std::shared_ptr<const SmashComplex> target);

/// Generators of x that form a subcomplex (closed under faces, containing
/// the basepoint).
struct Subcomplex {
  std::shared_ptr<const FiniteSimplicialSet> complex;
  SSetMap inclusion;
  std::vector<std::size_t> generators;  // indices in the ambient complex
};

/// Collapses a (face-closed) set of generators together with the basepoint.
/// Throws PreconditionError if `a` is not closed under faces.
FiniteSimplicialSet quotient(const FiniteSimplicialSet& x, const std::vector<std::size_t>& a);

Subcomplex subcomplex_generated(std::shared_ptr<const FiniteSimplicialSet> x,
                                const std::vector<SimplexRef>& s);
Subcomplex equalizer(const SSetMap& f, const SSetMap& g);

/// All pointed simplicial maps x -> y.
std::vector<SSetMap> enumerate_maps(std::shared_ptr<const FiniteSimplicialSet> x,
                                    std::shared_ptr<const FiniteSimplicialSet> y);
/// Pointed maps x ^ Delta^k_+ -> y.
std::vector<SSetMap> mapping_space_level(const FiniteSimplicialSet& x,
                                         std::shared_ptr<const FiniteSimplicialSet> y,
                                         int k);

bool is_one_reduced(const FiniteSimplicialSet& x);

/// Simplicial set given levelwise up to max_level by finite sets and their
/// structure maps.
struct LevelwiseData {
  int max_level = 0;
  std::vector<std::size_t> counts;
  std::function<std::size_t(int n, std::size_t e, int i)> face;
  std::function<std::size_t(int n, std::size_t e, int j)> degeneracy;
  std::size_t basepoint = 0;  // index at level 0
  std::function<std::string(int n, std::size_t e)> label;
};

struct LevelwiseBuild {
  FiniteSimplicialSet complex;
  /// refs[n][e]: canonical simplex of element e at level n.
  std::vector<std::vector<SimplexRef>> refs;
};

/// Nondegenerate elements become generators. Throws PreconditionError if
/// the data is not simplicial.
LevelwiseBuild from_levels(const LevelwiseData& data);

/// f is a bijection on every level <= max_level.
bool is_levelwise_bijective(const SSetMap& f, int max_level);

/// First simplicial identity violation of a generator, as text.
std::optional<std::string> first_identity_violation(const FiniteSimplicialSet& x, int max_level);

}  // namespace hocoalg

#endif  // HOCOALG_SSET_HPP
