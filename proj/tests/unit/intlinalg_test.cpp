#include <gtest/gtest.h>

#include <random>

#include "hocoalg/intlinalg.hpp"

namespace hocoalg {
namespace {

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const auto f = smith_invariants(m);
  if (f.size() != m.rows()) return false;
  for (const auto& x : f) {
    if (x != 1) return false;
  }
  return true;
}

void expect_decomposition(const IntMatrix& m, const SmithDecomposition& s) {
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_TRUE(is_unimodular(s.U));
  EXPECT_TRUE(is_unimodular(s.V));
}

TEST(SmithNormalForm, IdentityHasUnitFactors) {
  const IntMatrix id = IntMatrix::identity(3);
  const auto s = smith_normal_form(id);
  EXPECT_EQ(s.D, id);
  EXPECT_EQ(smith_invariants(id), (std::vector<Integer>{1, 1, 1}));
  expect_decomposition(id, s);
}

TEST(SmithNormalForm, ZeroHasNoFactors) {
  const IntMatrix z = IntMatrix::zero(2, 2);
  const auto s = smith_normal_form(z);
  EXPECT_TRUE(s.D.is_zero());
  EXPECT_TRUE(smith_invariants(z).empty());
  EXPECT_EQ(s.rank(), 0u);
}

TEST(SmithNormalForm, TwoByTwoFactorsFollowMinors) {
  const IntMatrix m = IntMatrix::from_rows({{2, 4}, {6, 8}});
  EXPECT_EQ(smith_invariants(m), (std::vector<Integer>{2, 4}));
  expect_decomposition(m, smith_normal_form(m));
}

TEST(SmithNormalForm, RectangularAndDivisibilityChain) {
  const IntMatrix m = IntMatrix::from_rows({{4, 0, 0, 2}, {0, 6, 0, 0}, {0, 0, 10, 0}});
  const auto s = smith_normal_form(m);
  expect_decomposition(m, s);
  for (std::size_t i = 1; i < s.rank(); ++i) {
    EXPECT_EQ(s.invariant_factors[i] % s.invariant_factors[i - 1], 0);
  }
}

TEST(SmithNormalForm, LeftInverseOnRequest) {
  const IntMatrix m = IntMatrix::from_rows({{3, 5}, {7, 11}, {1, 1}});
  SmithOptions opts;
  opts.inverse_left = true;
  const auto s = smith_normal_form(m, opts);
  ASSERT_TRUE(s.U_inverse.has_value());
  EXPECT_EQ(*s.U_inverse * s.U, IntMatrix::identity(3));
}

TEST(SmithNormalForm, BigEntriesStayExact) {
  const Integer big("123456789012345678901234567890");
  const IntMatrix m = IntMatrix::from_dense(2, 2, {big, big + 1, big * 2, big * 2 + 3});
  const auto s = smith_normal_form(m);
  expect_decomposition(m, s);
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel(IntMatrix::from_rows({{2}})).to_string(), "Z/2");
  EXPECT_EQ(cokernel(IntMatrix::zero(0, 3)).to_string(), "Z^3");
  EXPECT_EQ(cokernel(IntMatrix::from_rows({{2, 4}, {6, 8}})).to_string(), "Z/2 + Z/4");
}

TEST(Solve, Examples) {
  const IntVector b{5, -7, 2};
  EXPECT_EQ(solve(IntMatrix::identity(3), b), b);
  EXPECT_FALSE(solve(IntMatrix::from_rows({{2}}), IntVector{3}).has_value());
  const IntMatrix m = IntMatrix::from_rows({{2, 3}});
  const auto x = solve(m, IntVector{1});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m * *x, IntVector{1});
}

TEST(Solve, DimensionMismatchThrows) {
  EXPECT_THROW(solve(IntMatrix::identity(2), IntVector{1}), std::invalid_argument);
}

TEST(KernelBasis, SpansKernel) {
  const IntMatrix m = IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
  const IntMatrix k = kernel_basis(m);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((m * k).is_zero());
}

TEST(AbelianGroup, ParseAndPrint) {
  EXPECT_EQ(AbelianGroup::parse("Z + Z/2 + Z/4").to_string(), "Z + Z/2 + Z/4");
  EXPECT_EQ(AbelianGroup::parse("Z/6 + Z/4").to_string(), "Z/2 + Z/12");
  EXPECT_EQ(AbelianGroup::parse("Z^2").free_rank, 2u);
  EXPECT_TRUE(AbelianGroup::parse("0").is_trivial());
  EXPECT_ANY_THROW(AbelianGroup::parse("Q"));
  EXPECT_EQ(AbelianGroup::from_moduli({0, 6, 4}).to_string(), "Z + Z/2 + Z/12");
}

TEST(Subgroup, CoordinatesAndMembership) {
  // 2Z + Z/4 inside Z + Z/4, spanned by (2, 0) and (0, 2).
  const Subgroup s({0, 4}, IntMatrix::from_rows({{2, 0}, {0, 2}}));
  EXPECT_EQ(AbelianGroup::from_moduli(s.moduli()).to_string(), "Z + Z/2");
  EXPECT_TRUE(s.contains({4, 2}));
  EXPECT_FALSE(s.contains({1, 0}));
  EXPECT_TRUE(s.contains({0, 6}));
  const auto c = s.coordinates(IntVector{4, 2});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(reduced(s.inclusion() * *c, s.ambient_moduli()), (IntVector{4, 2}));
}

TEST(KernelSubgroup, ModularKernel) {
  // x -> 2x from Z/4 to Z/4 has kernel {0, 2}.
  const Subgroup k = kernel_subgroup({4}, {4}, IntMatrix::from_rows({{2}}));
  EXPECT_EQ(AbelianGroup::from_moduli(k.moduli()).to_string(), "Z/2");
}

TEST(Isomorphism, BasedGroups) {
  EXPECT_TRUE(is_isomorphism({0}, {0}, IntMatrix::from_rows({{-1}})));
  EXPECT_FALSE(is_isomorphism({0}, {0}, IntMatrix::from_rows({{2}})));
  EXPECT_TRUE(is_isomorphism({6}, {2, 3}, IntMatrix::from_rows({{1}, {1}})));
  EXPECT_TRUE(is_surjective({2}, IntMatrix::from_rows({{3}})));
}

TEST(Quotient, ExtraRelations) {
  const DiagonalForm f = quotient({0, 0}, IntMatrix::from_rows({{2}, {2}}));
  EXPECT_EQ(f.group().to_string(), "Z + Z/2");
}

TEST(LatticeKernel, AgreesWithSmithRoute) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> dim(1, 6), val(-3, 3), mod(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    std::vector<IntMatrix::Entry> e;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) e.push_back({i, j, Integer(val(rng))});
    }
    const IntMatrix m = IntMatrix::from_triplets(r, c, std::move(e));
    std::vector<Integer> target;
    for (std::size_t i = 0; i < r; ++i) {
      const int t = mod(rng);
      target.push_back(t == 1 ? 0 : t);
    }
    const std::vector<Integer> source(c, Integer(0));
    const Subgroup smith = kernel_subgroup(source, target, m);
    const IntMatrix k = lattice_kernel(m, target);
    const Subgroup lattice(source, k);
    for (std::size_t j = 0; j < k.cols(); ++j) {
      EXPECT_TRUE(smith.contains(k.column(j)));
      EXPECT_TRUE(is_zero(reduced(m * k.column(j), target)));
    }
    for (std::size_t j = 0; j < smith.inclusion().cols(); ++j) EXPECT_TRUE(lattice.contains(smith.inclusion().column(j)));
  }
}

TEST(LatticeKernel, TallRedundantSystem) {
  const IntMatrix small = IntMatrix::from_rows({{1, 2, 0, -1, 0, 3}, {0, 2, 4, 0, 2, 0}, {1, 4, 4, -1, 2, 3}});
  std::vector<IntMatrix::Entry> e;
  for (std::size_t copy = 0; copy < 2000; ++copy) {
    for (const auto& x : small.entries()) e.push_back({3 * copy + x.row, x.col, x.value});
  }
  const IntMatrix tall = IntMatrix::from_triplets(6000, 6, std::move(e));
  const IntMatrix k = kernel_basis(tall);
  ASSERT_EQ(k.cols(), 4u);
  EXPECT_TRUE((small * k).is_zero());
  // Same lattice as the Smith route on the small system.
  const Subgroup a(std::vector<Integer>(6, Integer(0)), k);
  const IntMatrix ks = kernel_basis(small);
  for (std::size_t j = 0; j < ks.cols(); ++j) EXPECT_TRUE(a.contains(ks.column(j)));
  EXPECT_EQ(ks.cols(), k.cols());
}

}  // namespace
}  // namespace hocoalg
