#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <random>

#include "corpus.hpp"
#include "hocoalg/sset.hpp"

namespace hocoalg {
namespace {

TEST(SimplicialIdentities, CorpusAndProducts) {
  for (const auto& c : testing::corpus()) EXPECT_FALSE(first_identity_violation(c.complex, 4).has_value()) << c.name;
  EXPECT_FALSE(first_identity_violation(product(sphere(2), sphere(1)), 4).has_value());
  EXPECT_FALSE(first_identity_violation(smash(testing::rp2(), sphere(1)), 4).has_value());
}

// Applies a random monotone operator two ways: directly, and as a word of
// faces and degeneracies. Both must give the same canonical simplex.
TEST(NormalForm, RandomWordsAreConfluent) {
  std::mt19937_64 rng(3);
  for (const auto& c : testing::corpus()) {
    const auto& x = c.complex;
    for (int trial = 0; trial < 60; ++trial) {
      const auto simplices = x.simplices(2);
      const SimplexRef s = simplices[std::uniform_int_distribution<std::size_t>(0, simplices.size() - 1)(rng)];
      // Random monotone theta : [m] -> [2].
      const int m = std::uniform_int_distribution<int>(0, 3)(rng);
      std::vector<int> theta;
      for (int i = 0; i <= m; ++i) theta.push_back(std::uniform_int_distribution<int>(0, 2)(rng));
      std::sort(theta.begin(), theta.end());
      const SimplexRef direct = x.apply_operator(s, theta);
      // Word: drop unused vertices with faces (top first), then repeat with degeneracies.
      SimplexRef w = s;
      for (int v = 2; v >= 0; --v) {
        if (std::find(theta.begin(), theta.end(), v) == theta.end()) w = x.face(w, v);
      }
      std::vector<int> image = theta;
      image.erase(std::unique(image.begin(), image.end()), image.end());
      for (std::size_t i = 0; i + 1 < theta.size(); ++i) {
        if (theta[i] == theta[i + 1]) w = x.degeneracy(w, static_cast<int>(i));
      }
      EXPECT_EQ(w, direct) << c.name;
    }
  }
}

TEST(Smash, SymmetricAndReduced) {
  const auto corpus = testing::corpus();
  for (const auto& a : corpus) {
    for (const auto& b : corpus) {
      if (a.complex.max_dim() + b.complex.max_dim() > 4) continue;
      const auto ab = smash(a.complex, b.complex);
      const auto ba = smash(b.complex, a.complex);
      for (int n = 0; n <= 3; ++n) EXPECT_EQ(ab.count(n), ba.count(n)) << a.name << " " << b.name;
      if (is_one_reduced(a.complex)) EXPECT_TRUE(is_one_reduced(ab)) << a.name << " " << b.name;
    }
  }
}

TEST(Maps, EnumeratedMapsAreSimplicial) {
  auto w = std::make_shared<const FiniteSimplicialSet>(wedge(sphere(1), sphere(1)));
  auto t = std::make_shared<const FiniteSimplicialSet>(product(sphere(1), sphere(1)));
  const auto maps = enumerate_maps(w, t);
  // Each circle goes to a loop at the basepoint: 4 choices each (3 edges or constant).
  EXPECT_EQ(maps.size(), 16u);
  for (const auto& f : maps) {
    for (int n = 0; n <= 2; ++n) {
      for (const auto& s : w->simplices(n)) {
        for (int i = 0; n > 0 && i <= n; ++i) EXPECT_EQ(t->face(f(s), i), f(w->face(s, i)));
      }
    }
  }
}

}  // namespace
}  // namespace hocoalg
