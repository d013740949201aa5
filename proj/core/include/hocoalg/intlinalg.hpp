// Exact sparse integer linear algebra over unbounded integers.
//
// Everything homological in hocoalg bottoms out here: Smith normal form,
// kernels, images, cokernels and integral solving. Matrices are stored as
// sorted coordinate lists; the Smith reduction itself works on a dense
// scratch buffer.

#ifndef HOCOALG_INTLINALG_HPP
#define HOCOALG_INTLINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hocoalg {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Integer value;
  };

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Sums duplicate coordinates and drops zeros.
  static IntMatrix from_triplets(std::size_t rows, std::size_t cols,
                                 std::vector<Entry> entries);
  /// Row-major dense input.
  static IntMatrix from_dense(std::size_t rows, std::size_t cols,
                              const std::vector<Integer>& values);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_columns(std::size_t rows,
                                const std::vector<IntVector>& columns);
  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) {
    return IntMatrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Integer at(std::size_t r, std::size_t c) const;
  std::vector<Integer> dense() const;
  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix operator-() const;
  IntMatrix scaled(const Integer& s) const;

  IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
  IntMatrix select_cols(const std::vector<std::size_t>& cols) const;

  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

  /// Reduces row i modulo moduli[i] into [0, moduli[i]) wherever moduli[i] > 0.
  IntMatrix reduced_rows(const std::vector<Integer>& moduli) const;

  bool operator==(const IntMatrix& other) const;
  bool operator!=(const IntMatrix& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;  // sorted by (row, col), values nonzero
};

IntVector reduced(const IntVector& v, const std::vector<Integer>& moduli);
bool is_zero(const IntVector& v);

/// U * M * V = D with U, V unimodular and D diagonal with d1 | d2 | ... .
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  /// Diagonal of D: nonzero factors first (divisibility chain), then zeros.
  std::vector<Integer> invariant_factors;
  /// Inverse of U; filled only when requested.
  std::optional<IntMatrix> U_inverse;

  std::size_t rank() const;
};

struct SmithOptions {
  bool transforms = true;
  bool inverse_left = false;
};

SmithDecomposition smith_normal_form(const IntMatrix& m,
                                     SmithOptions options = {});

/// Nonzero invariant factors only (no transforms).
std::vector<Integer> smith_invariants(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Finitely generated abelian group descriptor: Z^free_rank + sum Z/t_i with
/// t_1 | t_2 | ... and every t_i > 1.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroup& other) const {
    return free_rank == other.free_rank && torsion == other.torsion;
  }
  bool operator!=(const AbelianGroup& other) const { return !(*this == other); }

  /// "0", "Z", "Z^2", "Z/2", "Z + Z/2 + Z/4".
  std::string to_string() const;
  /// Accepts the to_string() format; throws InputError otherwise. Torsion is
  /// renormalized into the divisibility chain.
  static AbelianGroup parse(const std::string& text);
  /// Canonical descriptor of Z^a / diag(moduli) for arbitrary moduli.
  static AbelianGroup from_moduli(const std::vector<Integer>& moduli);
};

/// Each row of `relations` is a relation among cols() generators; returns
/// Z^cols / rowspace.
AbelianGroup cokernel(const IntMatrix& relations);

/// An integral x with m * x = b, if any. Throws std::invalid_argument on
/// dimension mismatch.
std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b);

/// Columns form a Z-basis of {x : m x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);
/// Columns span {x : (m x)_i = 0 mod row_moduli[i]}, modulus 0 meaning
/// equality; a basis when every modulus is 0. Rows are consumed one at a
/// time, so tall redundant systems cost little beyond one product per row.
IntMatrix lattice_kernel(const IntMatrix& m, const std::vector<Integer>& row_moduli);
/// Columns form a Z-basis of the column span of m (full column rank).
IntMatrix image_basis(const IntMatrix& m);

/// Reusable solver for m x = b with many right-hand sides.
class SystemSolver {
 public:
  SystemSolver() = default;
  explicit SystemSolver(const IntMatrix& m);
  std::optional<IntVector> solve(const IntVector& b) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  SmithDecomposition snf_;
};

/// Solver for repeated systems B c = v where B has full column rank.
class LatticeSolver {
 public:
  LatticeSolver() = default;
  explicit LatticeSolver(const IntMatrix& basis);
  std::optional<IntVector> solve(const IntVector& v) const;
  std::size_t dimension() const { return factors_.size(); }
  std::size_t ambient() const { return ambient_; }

 private:
  std::size_t ambient_ = 0;
  IntMatrix U_;
  IntMatrix V_;
  std::vector<Integer> factors_;
};

/// Presentation Z^g / (column span of relations) rewritten on a new basis in
/// which the relation lattice is diagonal. Generators of order one are
/// dropped. `to_new` maps old coordinates to new ones, `from_new` sends new
/// generators back to old representatives.
struct DiagonalForm {
  std::vector<Integer> moduli;  // 0 = infinite order, otherwise >= 2
  IntMatrix to_new;             // moduli.size() x g
  IntMatrix from_new;           // g x moduli.size()

  AbelianGroup group() const { return AbelianGroup::from_moduli(moduli); }
};

DiagonalForm diagonalize(std::size_t generators, const IntMatrix& relations);

/// Subgroup of a based group Z^g / diag(ambient moduli), given by a spanning
/// set of integer vectors. The relation lattice is added automatically.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::vector<Integer> ambient_moduli, const IntMatrix& spanning);

  const std::vector<Integer>& moduli() const { return form_.moduli; }
  std::size_t size() const { return form_.moduli.size(); }
  const std::vector<Integer>& ambient_moduli() const { return ambient_; }
  /// ambient x size(), rows reduced by the ambient moduli.
  const IntMatrix& inclusion() const { return inclusion_; }
  /// Coordinates of an ambient vector lying in the subgroup.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  /// Column-wise coordinates; throws std::domain_error if some column is
  /// outside the subgroup.
  IntMatrix coordinates(const IntMatrix& columns) const;
  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

 private:
  std::vector<Integer> ambient_;
  IntMatrix basis_;
  LatticeSolver solver_;
  DiagonalForm form_;
  IntMatrix inclusion_;
};

/// {x in source : m x = 0 in target}, for based groups.
Subgroup kernel_subgroup(const std::vector<Integer>& source_moduli,
                         const std::vector<Integer>& target_moduli,
                         const IntMatrix& m);

/// Diagonal relation matrix of a based group (one column per torsion generator).
IntMatrix relation_matrix(const std::vector<Integer>& moduli);

/// Based group modulo extra relations (columns), in diagonal form.
DiagonalForm quotient(const std::vector<Integer>& moduli,
                      const IntMatrix& extra_relations);

/// True when m : source -> target is an isomorphism of based groups.
bool is_isomorphism(const std::vector<Integer>& source_moduli,
                    const std::vector<Integer>& target_moduli,
                    const IntMatrix& m);
/// True when m : source -> target is onto.
bool is_surjective(const std::vector<Integer>& target_moduli,
                   const IntMatrix& m);

}  // namespace hocoalg

#endif  // HOCOALG_INTLINALG_HPP
