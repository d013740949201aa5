#include <gtest/gtest.h>

#include "corpus.hpp"
#include "hocoalg/errors.hpp"
#include "hocoalg/json_io.hpp"

namespace hocoalg {
namespace {

TEST(JsonIo, IntegersBothSpellings) {
  EXPECT_EQ(integer_to_json(Integer(-5)), Json(-5));
  const Integer big("99999999999999999999999");
  EXPECT_EQ(integer_to_json(big), Json("99999999999999999999999"));
  EXPECT_EQ(integer_from_json(integer_to_json(big)), big);
  EXPECT_THROW(integer_from_json(Json("12x")), InputError);
  EXPECT_THROW(integer_from_json(Json(1.5)), InputError);
}

TEST(JsonIo, SimplicialSetsRoundTripExactly) {
  for (const auto& c : testing::corpus()) {
    const std::string text = sset_to_json(c.complex).dump();
    const auto back = sset_from_json(Json::parse(text));
    EXPECT_EQ(sset_to_json(back).dump(), text) << c.name;
  }
}

TEST(JsonIo, SimplicialSetErrors) {
  Json j = sset_to_json(sphere(1));
  j["generators"][1]["faces"][0]["gen"] = "nope";
  EXPECT_THROW(sset_from_json(j), InputError);
  Json k = sset_to_json(sphere(1));
  k["basepoint"] = "e1";
  EXPECT_THROW(sset_from_json(k), InputError);
  EXPECT_THROW(sset_from_json(Json::array()), InputError);
  Json dup = sset_to_json(sphere(1));
  dup["generators"][1]["id"] = "*";
  EXPECT_THROW(sset_from_json(dup), InputError);
}

TEST(JsonIo, MapsRoundTrip) {
  const SSetMap f = testing::fold_map();
  const Json j = sset_map_to_json(f);
  EXPECT_EQ(sset_map_to_json(sset_map_from_json(j)), j);
  Json missing = j;
  missing["assignment"].erase(1);
  EXPECT_THROW(sset_map_from_json(missing), InputError);
}

TEST(JsonIo, SimplicialAbelianGroupsRoundTrip) {
  const auto a = eilenberg_maclane(AbelianGroup::parse("Z + Z/12"), 2, 3);
  const Json j = sab_to_json(a);
  EXPECT_EQ(sab_to_json(sab_from_json(j)), j);
  Json bad = j;
  bad["levels"][2]["faces"][0]["entries"].push_back(Json::array({0, 0, 1}));
  bad["levels"][2]["faces"][0]["entries"].push_back(Json::array({0, 0, 1}));
  EXPECT_THROW(sab_from_json(bad), InputError);
}

TEST(JsonIo, FreeElementsRoundTrip) {
  const FreeElement x = FreeElement::basis(2, 0), y = FreeElement::basis(2, 3);
  const FreeElement e = FreeElement::bracket(FreeElement::bracket(x.scaled(2) - y).scaled(3) + FreeElement::bracket(y));
  EXPECT_EQ(free_element_from_json(free_element_to_json(e)), e);
  EXPECT_THROW(free_element_from_json(Json{{"level", 0}, {"depth", 1}, {"terms", Json::array({Json::array({1, 0})})}}),
               InputError);
}

TEST(JsonIo, CoalgebrasRoundTrip) {
  const KCoalgebra c = can(testing::rp2(), 3);
  const Json j = coalgebra_to_json(c);
  const KCoalgebra back = coalgebra_from_json(j);
  EXPECT_EQ(coalgebra_to_json(back), j);
  EXPECT_TRUE(check_coalgebra(back).ok());
  Json missing = j;
  missing["coaction"].erase(0);
  EXPECT_THROW(coalgebra_from_json(missing), InputError);
}

TEST(JsonIo, CosimplicialRoundTrip) {
  auto a = std::make_shared<const SimplicialAbelianGroup>(eilenberg_maclane(AbelianGroup::parse("Z"), 1, 3));
  const auto z = insertion_cosimplicial(a, 2);
  const Json j = cosimplicial_to_json(z);
  EXPECT_EQ(cosimplicial_to_json(cosimplicial_from_json(j)), j);
}

}  // namespace
}  // namespace hocoalg
