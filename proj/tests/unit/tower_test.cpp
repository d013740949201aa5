#include <gtest/gtest.h>

#include <memory>

#include "corpus.hpp"
#include "hocoalg/errors.hpp"
#include "hocoalg/tower.hpp"

namespace hocoalg {
namespace {

SAbPtr share(SimplicialAbelianGroup a) { return std::make_shared<const SimplicialAbelianGroup>(std::move(a)); }

SAbPtr em(const char* g, int n, int bound) { return share(eilenberg_maclane(AbelianGroup::parse(g), n, bound)); }

TEST(Cobar, CofacesAtCodegreeZero) {
  // 2x - y with x, y basis atoms at level 1.
  const FreeElement e = FreeElement::basis(1, 0, 2) - FreeElement::basis(1, 1);
  EXPECT_EQ(cobar_coface(e, 0), FreeElement::bracket(e));
  EXPECT_EQ(cobar_coface(e, 1),
            FreeElement::bracket(FreeElement::basis(1, 0)).scaled(2) - FreeElement::bracket(FreeElement::basis(1, 1)));
  EXPECT_EQ(cobar_codegeneracy(cobar_coface(e, 0), 0), e);
}

TEST(Cobar, IdentitiesHold) {
  const auto obj = cobar(sphere(1), 2, 3);
  const auto r = check_cosimplicial_identities(obj, 50, 7);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.checked(), 0u);
  EXPECT_EQ(r.seed, 7u);
}

TEST(Cobar, SwappedCofacesAreCaught) {
  auto obj = cobar(sphere(2), 2, 3);
  const auto original = obj.coface;
  obj.coface = [original](const FreeElement& e, int i) { return original(e, i == 0 ? 1 : i == 1 ? 0 : i); };
  const auto r = check_cosimplicial_identities(obj, 30, 3);
  EXPECT_FALSE(r.ok());
  bool witnessed = false;
  for (const auto& t : r.tallies) witnessed = witnessed || (t.failed > 0 && t.witness.has_value());
  EXPECT_TRUE(witnessed);
}

TEST(Contraction, EachIdentityTallied) {
  const auto obj = cobar(wedge(sphere(1), sphere(2)), 3, 3);
  const auto r = check_contraction(obj, 20, 5);
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.tallies.size(), 4u);
  for (const auto& t : r.tallies) EXPECT_GT(t.checked, 0u) << t.name;
}

TEST(Contraction, ZeroObjectPasses) {
  const auto r = check_contraction(cobar(point(), 2, 2), 10, 1);
  EXPECT_TRUE(r.ok());
}

TEST(Contraction, BrokenCodegeneracyCaught) {
  auto obj = cobar(sphere(1), 3, 2);
  const auto original = obj.codegeneracy;
  obj.codegeneracy = [original](const FreeElement& e, int j) { return original(e, j).scaled(j == 0 ? 2 : 1); };
  EXPECT_FALSE(check_contraction(obj, 10, 2).ok());
}

TEST(MatrixCosimplicial, ConstantAndInsertion) {
  auto a = em("Z", 1, 4);
  EXPECT_TRUE(check_cosimplicial_identities(constant_cosimplicial(a, 3)).ok());
  EXPECT_TRUE(check_cosimplicial_identities(insertion_cosimplicial(a, 3)).ok());
  auto bad = constant_cosimplicial(a, 2);
  bad.cofaces[1][0] = zero_map(a, a);
  EXPECT_FALSE(check_cosimplicial_identities(bad).ok());
}

TEST(Cotensor, PointShapeIsValues) {
  auto a = em("Z", 1, 3);
  const auto c = cotensor(a, std::make_shared<const FiniteSimplicialSet>(standard_simplex(0)), 3);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(AbelianGroup::from_moduli(c.object->levels[k]), a->group(k));
  EXPECT_FALSE(c.object->check().has_value());
  EXPECT_THROW(cotensor(a, std::make_shared<const FiniteSimplicialSet>(standard_simplex(2)), 3),
               PreconditionError);
}

TEST(Cotensor, CircleShapeGivesFreeLoops) {
  // Maps S^1 x Delta^k -> K(Z,2): pi_1 = pi_2 = Z.
  auto a = em("Z", 2, 4);
  const auto c = cotensor(a, std::make_shared<const FiniteSimplicialSet>(sphere(1)), 3);
  EXPECT_FALSE(c.object->check().has_value());
  EXPECT_EQ(homotopy_group(*c.object, 1).to_string(), "Z");
  EXPECT_EQ(homotopy_group(*c.object, 2).to_string(), "Z");
}

TEST(TotRes, StageZeroIsZ0) {
  auto a = em("Z/2", 1, 5);
  const auto s0 = tot_res_stage(constant_cosimplicial(a, 2), 0, 3);
  const auto ev = tot_res_zero_evaluation(s0, a);
  EXPECT_FALSE(ev.check().has_value());
  for (int k = 0; k <= 3; ++k) EXPECT_TRUE(is_isomorphism(s0.object->levels[k], a->levels[k], ev.components[k]));
}

TEST(TotRes, StagesAreFibrations) {
  auto a = em("Z", 1, 5);
  const auto constant = tot_res_tower(constant_cosimplicial(a, 2), 2, 3);
  ASSERT_EQ(constant.size(), 3u);
  for (const auto& s : constant) EXPECT_TRUE(s.fibration) << s.n;
  // Stage 1 of the constant object is the free loop object A x Omega A.
  EXPECT_EQ(homotopy_group(*constant[1].object, 0).to_string(), "Z");
  EXPECT_EQ(homotopy_group(*constant[1].object, 1).to_string(), "Z");
  const auto ins = tot_res_tower(insertion_cosimplicial(a, 2), 2, 3);
  for (const auto& s : ins) EXPECT_TRUE(s.fibration) << s.n;
  EXPECT_THROW(tot_res_tower(constant_cosimplicial(a, 2), 2, 4), PreconditionError);
}

TEST(FactorThrough, TruncationMaps) {
  auto a = share(free_reduced(sphere(2), 4));
  const auto t3 = postnikov_truncation(a, 3);
  const auto t2 = postnikov_truncation(a, 2);
  const SAbMap g = factor_through(t3.map, t2.map);
  EXPECT_TRUE(equal_maps(compose(g, t3.map), t2.map));
  EXPECT_THROW(factor_through(zero_map(a, share(zero_sab(4))), identity(a)), PreconditionError);
}

TEST(Postnikov, AbelianCarriers) {
  const auto k = postnikov_tower(em("Z", 2, 5), 5);
  EXPECT_TRUE(k.ok());
  ASSERT_EQ(k.stages.size(), 5u);
  EXPECT_EQ(k.stages[2].pi[2].to_string(), "Z");

  const auto s = postnikov_tower(share(free_reduced(smash(sphere(1), sphere(1)), 5)), 5);
  EXPECT_TRUE(s.ok());
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(s.stages[2].pi[m].to_string(), m == 2 ? "Z" : "0");
}

TEST(Postnikov, ZeroKInvariantGivesProduct) {
  const auto t = postnikov_tower(sphere(2), {0}, {KInvariantInput{3, {2}, std::nullopt}}, 4);
  EXPECT_TRUE(t.ok());
  ASSERT_EQ(t.stages.size(), 2u);
  EXPECT_EQ(t.stages[1].pi[2].to_string(), "Z");
  EXPECT_EQ(t.stages[1].pi[3].to_string(), "Z/2");
  ASSERT_TRUE(t.stages[1].square.has_value());
  EXPECT_FALSE(verify_pullback(*t.stages[1].square, *t.stages[1].k_invariant, t.stages[1].path->projection, 5, 9)
                   .has_value());
}

TEST(Postnikov, Preconditions) {
  EXPECT_THROW(postnikov_tower(sphere(1), {0}, {}, 4), PreconditionError);
  EXPECT_THROW(postnikov_tower(sphere(2), {0}, {KInvariantInput{4, {0}, std::nullopt}}, 4), InputError);
  const auto wrong = postnikov_tower(sphere(2), {2}, {}, 4);
  EXPECT_FALSE(wrong.ok());
}

TEST(Postnikov, MalformedKInvariantRejected) {
  KInvariantInput k{3, {0}, std::vector<IntMatrix>{}};
  EXPECT_THROW(postnikov_tower(sphere(2), {0}, {k}, 3), InputError);
}

TEST(FibrantReport, Examples) {
  const auto k = fibrant_replacement_report(em("Z", 2, 5), 4);
  EXPECT_TRUE(k.certified);
  EXPECT_EQ(k.stage_pi.size(), 5u);
  EXPECT_TRUE(fibrant_replacement_report(share(free_reduced(sphere(2), 5)), 4).certified);
  EXPECT_THROW(fibrant_replacement_report(share(free_reduced(sphere(1), 5)), 4), PreconditionError);
}

}  // namespace
}  // namespace hocoalg
