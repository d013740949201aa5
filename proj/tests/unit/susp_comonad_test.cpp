#include <gtest/gtest.h>

#include <memory>

#include "corpus.hpp"
#include "hocoalg/errors.hpp"
#include "hocoalg/sab.hpp"
#include "hocoalg/susp_comonad.hpp"

namespace hocoalg {
namespace {

std::shared_ptr<const FiniteSimplicialSet> share(FiniteSimplicialSet x) {
  return std::make_shared<const FiniteSimplicialSet>(std::move(x));
}

TEST(Suspend, PointAndCircle) {
  EXPECT_EQ(suspend(point(), 2).num_generators(), 1u);
  const auto s = suspend(sphere(1), 1);
  const auto a = free_reduced(s, 3);
  EXPECT_EQ(homotopy_group(a, 2).to_string(), "Z");
  EXPECT_EQ(homotopy_group(a, 1).to_string(), "0");
}

TEST(Loops, LevelCounts) {
  EXPECT_EQ(loops_level(sphere(1), 1, 0).size(), 2u);
  EXPECT_EQ(loops_level(point(), 1, 0).size(), 1u);
  EXPECT_EQ(loops_level(point(), 2, 1).size(), 1u);
  // S^2 has nothing in dimension 1 besides the basepoint.
  EXPECT_EQ(loops_level(sphere(2), 1, 0).size(), 1u);
}

TEST(CanR, CoalgebraLawsHold) {
  for (const char* name : {"pt", "S1", "S2"}) {
    const auto c = can_r(testing::corpus_member(name), 1, 2);
    EXPECT_TRUE(check_kr_coalgebra(c).ok()) << name;
  }
}

TEST(CanR, CorruptedCoactionFails) {
  auto c = can_r(wedge(sphere(1), sphere(1)), 1, 2);
  // Swap the coaction values of two 2-simplices of the suspension.
  const auto top = c.carrier->generators_of_dim(2);
  ASSERT_GE(top.size(), 2u);
  std::swap(c.coaction[top[0]], c.coaction[top[1]]);
  EXPECT_FALSE(check_kr_coalgebra(c).ok());
}

TEST(PrimitivesR, RecoversSmallComplexes) {
  for (const char* name : {"pt", "S1", "S2"}) {
    const auto x = testing::corpus_member(name);
    const auto c = can_r(x, 1, 3);
    const auto p = primitives_r(c, 3);
    EXPECT_TRUE(unit_is_bijective(x, c, p)) << name;
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(p.complex.count(n), x.count(n)) << name << " level " << n;
  }
}

TEST(ComonadLaws, LoopSpaces) {
  EXPECT_TRUE(check_kr_comonad_laws(sphere(1), 1, 2).ok());
  EXPECT_TRUE(check_kr_comonad_laws(sphere(2), 1, 2).ok());
}

TEST(ReflectIso, Examples) {
  auto s1 = share(sphere(1));
  const auto id = reflects_iso_check(identity_map(s1), 1, 3);
  EXPECT_TRUE(id.f_iso);
  EXPECT_TRUE(id.sigma_f_iso);
  EXPECT_TRUE(id.consistent);

  const auto fold = reflects_iso_check(testing::fold_map(), 1, 3);
  EXPECT_FALSE(fold.f_iso);
  EXPECT_FALSE(fold.sigma_f_iso);
  EXPECT_TRUE(fold.consistent);
  ASSERT_TRUE(fold.sigma_failure_level.has_value());

  const auto cst = reflects_iso_check(testing::constant_map(s1, s1), 1, 3);
  EXPECT_FALSE(cst.f_iso);
  EXPECT_FALSE(cst.sigma_f_iso);
  EXPECT_TRUE(cst.consistent);
}

TEST(SmashEqualizer, Examples) {
  auto s1 = share(sphere(1));
  const auto id = identity_map(s1);
  EXPECT_TRUE(smash_equalizer_commutes(id, id, sphere(1), 3).commutes);
  const auto r = smash_equalizer_commutes(id, testing::constant_map(s1, s1), sphere(1), 3);
  EXPECT_TRUE(r.commutes);
  EXPECT_EQ(r.lhs_simplices, r.rhs_simplices);
}

TEST(SmashEqualizer, FoldAgainstSwappedFold) {
  const auto fold = testing::fold_map();
  auto w = fold.source_ptr();
  const SSetMap swap(w, w,
                     {SimplexRef{w->basepoint(), {}}, SimplexRef{*w->find("e1'"), {}},
                      SimplexRef{*w->find("e1"), {}}});
  EXPECT_TRUE(smash_equalizer_commutes(fold, compose(fold, swap), sphere(2), 4).commutes);
}

}  // namespace
}  // namespace hocoalg
