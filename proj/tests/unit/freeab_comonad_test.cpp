#include <gtest/gtest.h>

#include "corpus.hpp"
#include "hocoalg/errors.hpp"
#include "hocoalg/freeab_comonad.hpp"

namespace hocoalg {
namespace {

FreeElement atom(std::size_t i, const Integer& c = 1) { return FreeElement::basis(1, i, c); }
FreeElement br(const FreeElement& e) { return FreeElement::bracket(e); }

TEST(FreeElement, CounitExamples) {
  const FreeElement x = atom(0), y = atom(1);
  EXPECT_EQ(counit(br(x).scaled(3) - br(y)), x.scaled(3) - y);
  EXPECT_TRUE(counit(br(x) + br(-x)).is_zero());
  EXPECT_EQ(counit(br(x.scaled(2) - y)), x.scaled(2) - y);
  EXPECT_THROW(counit(x), PreconditionError);
}

TEST(FreeElement, ComultiplyExamples) {
  const FreeElement x = atom(0), y = atom(1);
  EXPECT_EQ(comultiply(br(x).scaled(3) - br(y)), br(br(x)).scaled(3) - br(br(y)));
  EXPECT_TRUE(comultiply(FreeElement::zero(1, 1)).is_zero());
  EXPECT_EQ(comultiply(br(x.scaled(2) - y)), br(br(x.scaled(2) - y)));
}

TEST(FreeElement, BracketsDoNotDistribute) {
  const FreeElement x = atom(0), y = atom(1);
  EXPECT_NE(br(x + y), br(x) + br(y));
  EXPECT_TRUE(br(FreeElement::zero(1, 0)).is_zero());
  EXPECT_EQ((br(x) + br(x)).terms().size(), 1u);
}

TEST(FreeElement, SupportExamples) {
  const FreeElement x = atom(0), y = atom(1);
  EXPECT_EQ(support(br(x) + br(y).scaled(2)), (std::vector<FreeElement>{x, y}));
  EXPECT_TRUE(support(FreeElement::zero(1, 1)).empty());
  EXPECT_EQ(support(br(x.scaled(2) - y).scaled(5)), (std::vector<FreeElement>{x.scaled(2) - y}));
}

TEST(FreeElement, ToStringNestsBrackets) {
  const FreeElement e = br(br(atom(0)).scaled(3) - br(atom(2)));
  EXPECT_EQ(e.depth(), 2);
  EXPECT_EQ(e.to_string([](std::size_t i) { return "x" + std::to_string(i); }), "[3[x0] - [x2]]");
}

TEST(Coalgebra, CanPassesOnCorpus) {
  for (const auto& c : testing::corpus()) {
    const auto report = check_coalgebra(can(c.complex, 4));
    EXPECT_TRUE(report.ok()) << c.name;
  }
}

TEST(Coalgebra, DoubledCoactionFailsCounit) {
  KCoalgebra c = can(sphere(1), 3);
  c.coaction[1][0] = c.coaction[1][0].scaled(2);
  const auto report = check_coalgebra(c);
  EXPECT_FALSE(report.counit_ok);
  ASSERT_FALSE(report.failures.empty());
  EXPECT_EQ(report.failures[0].level, 1);
}

TEST(Coalgebra, WrongAtomFailsCounit) {
  KCoalgebra c = can(wedge(sphere(1), sphere(1)), 3);
  c.coaction[1][0] = br(FreeElement::basis(1, 1));
  EXPECT_FALSE(check_coalgebra(c).counit_ok);
}

TEST(Coalgebra, TorsionCarrierIsStructuralError) {
  KCoalgebra c = can(sphere(1), 2);
  auto carrier = std::make_shared<SimplicialAbelianGroup>(*c.carrier);
  carrier->levels[0] = {};
  carrier->levels[1][0] = 2;
  c.carrier = carrier;
  EXPECT_TRUE(c.structural_error().has_value());
  EXPECT_FALSE(check_coalgebra(c).structure_ok);
}

TEST(Setlike, CanHasBasisAsSetlike) {
  const KCoalgebra c = can(sphere(1), 3);
  const auto s = setlike_elements(c, 1);
  ASSERT_EQ(s.elements.size(), 1u);
  EXPECT_EQ(s.elements[0], (IntVector{1}));
  for (const auto& x : testing::corpus()) {
    const KCoalgebra cx = can(x.complex, 3);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(setlike_elements(cx, n).elements.size(), cx.carrier->rank(n)) << x.name;
  }
}

TEST(Setlike, BasisChangeRecoversOriginalAtoms) {
  const KCoalgebra c = can(wedge(sphere(1), sphere(1)), 3);
  std::vector<IntMatrix> change;
  for (int n = 0; n <= 3; ++n) change.push_back(IntMatrix::identity(c.carrier->rank(n)));
  // Level 1: b1 = x + y, b2 = y.
  change[1] = IntMatrix::from_rows({{1, 0}, {1, 1}});
  const KCoalgebra d = change_basis(c, change);
  SetlikeOptions opts;
  opts.coeff_box = 3;
  const auto s = setlike_elements(d, 1, opts);
  // x = b1 - b2, y = b2 in the new coordinates.
  EXPECT_EQ(s.elements, (std::vector<IntVector>{{0, 1}, {1, -1}}));
  EXPECT_FALSE(s.box_disagrees);
}

TEST(Primitives, RecoverCorpus) {
  for (const auto& x : testing::corpus()) {
    const auto p = primitives(can(x.complex, 4));
    for (int n = 0; n <= 4; ++n) EXPECT_EQ(p.complex.count(n), x.complex.count(n)) << x.name;
  }
}

TEST(Subcoalgebra, SumOfCirclesGeneratesWedge) {
  const KCoalgebra c = can(wedge(sphere(1), sphere(1)), 3);
  const auto sub = subcoalgebra_generated(c, {{1, {1, 1}}});
  EXPECT_TRUE(sub.report.ok());
  EXPECT_EQ(sub.generators[1].size(), 2u);
  EXPECT_EQ(sub.sub.carrier->rank(2), c.carrier->rank(2));
}

TEST(Subcoalgebra, EmptyAndTopCell) {
  const KCoalgebra c = can(sphere(2), 3);
  const auto empty = subcoalgebra_generated(c, {});
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(empty.sub.carrier->rank(n), 0u);
  const auto top = subcoalgebra_generated(c, {{2, {1}}});
  EXPECT_TRUE(top.report.ok());
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(top.sub.carrier->rank(n), c.carrier->rank(n));
}

TEST(RecoverBasis, ChangedCircle) {
  const KCoalgebra c = can(sphere(1), 3);
  std::vector<IntMatrix> change;
  for (int n = 0; n <= 3; ++n) change.push_back(IntMatrix::identity(c.carrier->rank(n)));
  // Level 2 has basis s0 x, s1 x; use {s0 x, s0 x + s1 x}.
  change[2] = IntMatrix::from_rows({{1, 1}, {0, 1}});
  const auto r = recover_basis(change_basis(c, change));
  EXPECT_TRUE(r.ok) << r.message;
  EXPECT_EQ(r.primitives.complex.generators_of_dim(1).size(), 1u);
}

TEST(RecoverBasis, ZeroCoalgebraIsPoint) {
  const auto r = recover_basis(can(point(), 3));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.primitives.complex.num_generators(), 1u);
}

}  // namespace
}  // namespace hocoalg
