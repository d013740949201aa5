#include <gtest/gtest.h>

#include "corpus.hpp"
#include "hocoalg/sab.hpp"

namespace hocoalg {
namespace {

class HomologyOracle : public ::testing::TestWithParam<std::string> {};

TEST_P(HomologyOracle, NormalizedChainsMatchMooreComplex) {
  const auto x = testing::corpus_member(GetParam());
  const auto expected = testing::oracle_reduced_homology(x, 4);
  const auto nc = normalized_chains(free_reduced(x, 5));
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(homology(nc.complex, n).group().to_string(), expected[n].to_string()) << "degree " << n;
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, HomologyOracle,
                         ::testing::Values("pt", "S1", "S2", "S1vS1", "S1vS2", "S1xS1", "S1^S1", "RP2"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& c : s) {
                             if (c == '^') c = 's';
                           }
                           return s;
                         });

TEST(HomologyOracleFixed, KnownGroups) {
  EXPECT_EQ(testing::oracle_reduced_homology(testing::rp2(), 2)[1].to_string(), "Z/2");
  EXPECT_EQ(testing::oracle_reduced_homology(product(sphere(1), sphere(1)), 2)[1].to_string(), "Z^2");
  EXPECT_EQ(testing::oracle_reduced_homology(sphere(3), 3)[3].to_string(), "Z");
}

}  // namespace
}  // namespace hocoalg
