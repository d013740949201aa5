#include <gtest/gtest.h>

#include <memory>

#include "corpus.hpp"
#include "hocoalg/errors.hpp"
#include "hocoalg/sset.hpp"

namespace hocoalg {
namespace {

using testing::constant_map;
using testing::fold_map;

std::shared_ptr<const FiniteSimplicialSet> share(FiniteSimplicialSet x) {
  return std::make_shared<const FiniteSimplicialSet>(std::move(x));
}

TEST(Faces, StandardSimplex) {
  const auto d1 = standard_simplex(1);
  const SimplexRef edge{*d1.find("[0,1]"), {}};
  EXPECT_EQ(d1.face(edge, 0), (SimplexRef{*d1.find("[1]"), {}}));
  EXPECT_EQ(d1.face(edge, 1), (SimplexRef{*d1.find("[0]"), {}}));
}

TEST(Faces, DegenerateRewrites) {
  const auto s2 = sphere(2);
  const SimplexRef v{s2.basepoint(), {}};
  EXPECT_EQ(s2.face(s2.degeneracy(v, 0), 0), v);
  const auto d2 = standard_simplex(2);
  const SimplexRef sigma{*d2.find("[0,1,2]"), {}};
  // d0 s1 = s0 d0
  EXPECT_EQ(d2.face(d2.degeneracy(sigma, 1), 0), d2.degeneracy(d2.face(sigma, 0), 0));
}

TEST(Models, GeneratorAndCellCounts) {
  EXPECT_EQ(sphere(2).num_generators(), 2u);
  EXPECT_EQ(sphere(2).count(3), 4u);
  EXPECT_EQ(sphere(1).count(1), 2u);
  EXPECT_EQ(wedge(sphere(1), sphere(1)).num_generators(), 3u);
  EXPECT_EQ(standard_simplex(2).num_generators(), 7u);
  EXPECT_EQ(boundary(2).num_generators(), 6u);
  EXPECT_THROW(boundary(0), PreconditionError);
}

TEST(Models, SmashWithPointIsPoint) {
  const auto s = smash(sphere(2), point());
  EXPECT_EQ(s.num_generators(), 1u);
}

TEST(Models, SmashIsSymmetricInSize) {
  const auto a = smash(sphere(1), sphere(2));
  const auto b = smash(sphere(2), sphere(1));
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(a.count(n), b.count(n));
}

TEST(Models, ProductOfCircles) {
  const auto t = product(sphere(1), sphere(1));
  EXPECT_EQ(t.generators_of_dim(1).size(), 3u);
  EXPECT_EQ(t.generators_of_dim(2).size(), 2u);
  EXPECT_FALSE(first_identity_violation(t, 4).has_value());
}

TEST(Models, RejectsBrokenFaces) {
  std::vector<Generator> g;
  g.push_back({"*", 0, {}});
  g.push_back({"v", 0, {}});
  g.push_back({"e", 1, {SimplexRef{0, {}}, SimplexRef{1, {}}}});
  // A 2-cell whose faces violate d0 d1 = d0 d0.
  g.push_back({"f", 2, {SimplexRef{2, {}}, SimplexRef{0, {0}}, SimplexRef{0, {0}}}});
  EXPECT_THROW(FiniteSimplicialSet(g, 0), InputError);
}

TEST(Subcomplex, Generated) {
  auto s1 = share(sphere(1));
  EXPECT_EQ(subcomplex_generated(s1, {SimplexRef{s1->basepoint(), {}}}).complex->num_generators(), 1u);
  EXPECT_EQ(subcomplex_generated(s1, {SimplexRef{*s1->find("e1"), {}}}).complex->num_generators(), 2u);
  auto w = share(wedge(sphere(1), sphere(1)));
  const auto sub = subcomplex_generated(w, {SimplexRef{*w->find("e1'"), {}}});
  EXPECT_EQ(sub.complex->num_generators(), 2u);
  EXPECT_EQ(sub.inclusion.assignment().size(), 2u);
}

TEST(Equalizer, Examples) {
  auto s1 = share(sphere(1));
  const SSetMap id = identity_map(s1);
  EXPECT_EQ(equalizer(id, id).complex->num_generators(), 2u);
  EXPECT_EQ(equalizer(id, constant_map(s1, s1)).complex->num_generators(), 1u);

  const SSetMap fold = fold_map();
  auto w = fold.source_ptr();
  const SSetMap swap(w, w,
                     {SimplexRef{w->basepoint(), {}}, SimplexRef{*w->find("e1'"), {}},
                      SimplexRef{*w->find("e1"), {}}});
  EXPECT_EQ(equalizer(fold, compose(fold, swap)).complex->num_generators(), 3u);
}

TEST(Quotient, CollapsesToBasepoint) {
  const auto d1 = standard_simplex(1);
  const auto q = quotient(d1, {*d1.find("[0]"), *d1.find("[1]")});
  EXPECT_EQ(q.num_generators(), 2u);
  EXPECT_EQ(q.generators_of_dim(1).size(), 1u);
  const auto d2 = standard_simplex(2);
  EXPECT_THROW(quotient(d2, {*d2.find("[0,1]")}), PreconditionError);
}

TEST(Maps, Enumeration) {
  auto s1 = share(sphere(1));
  EXPECT_EQ(enumerate_maps(s1, s1).size(), 2u);
  EXPECT_EQ(enumerate_maps(share(point()), s1).size(), 1u);
  EXPECT_EQ(mapping_space_level(sphere(1), s1, 0).size(), 2u);
}

TEST(Maps, RejectsNonSimplicialAssignment) {
  auto s1 = share(sphere(1));
  auto s2 = share(sphere(2));
  // A 1-cell cannot go to a 0-simplex's image of the wrong dimension.
  EXPECT_THROW(SSetMap(s1, s2, {SimplexRef{0, {}}, SimplexRef{1, {}}}), InputError);
}

TEST(Reducedness, Examples) {
  EXPECT_TRUE(is_one_reduced(sphere(2)));
  EXPECT_FALSE(is_one_reduced(sphere(1)));
  for (const auto& c : testing::corpus()) EXPECT_TRUE(is_one_reduced(smash(sphere(2), c.complex))) << c.name;
}

TEST(Operators, VerticesRoundTrip) {
  const auto d3 = standard_simplex(3);
  const SimplexRef r = simplex_with_vertices(d3, {0, 1, 1, 3});
  EXPECT_EQ(simplex_vertices(d3, r), (std::vector<int>{0, 1, 1, 3}));
  EXPECT_EQ(coface_operator(2, 1), (std::vector<int>{0, 2}));
  EXPECT_EQ(codegeneracy_operator(1, 0), (std::vector<int>{0, 0, 1}));
}

TEST(Levelwise, FromLevelsRebuildsCircle) {
  // S^1 levelwise: level n has n + 1 elements; element 0 is the basepoint.
  const auto s1 = sphere(1);
  const LevelIndex idx(s1, 4);
  LevelwiseData data;
  data.max_level = 4;
  for (int n = 0; n <= 4; ++n) data.counts.push_back(idx.level(n).size());
  data.face = [&](int n, std::size_t e, int i) { return idx.index(n - 1, s1.face(idx.level(n)[e], i)); };
  data.degeneracy = [&](int n, std::size_t e, int j) {
    return idx.index(n + 1, s1.degeneracy(idx.level(n)[e], j));
  };
  data.basepoint = 0;
  const auto built = from_levels(data);
  EXPECT_EQ(built.complex.num_generators(), 2u);
  EXPECT_EQ(built.complex.generators_of_dim(1).size(), 1u);
}

}  // namespace
}  // namespace hocoalg
