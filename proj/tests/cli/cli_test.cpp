#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "cli.hpp"
#include "corpus.hpp"
#include "hocoalg/json_io.hpp"

namespace hocoalg {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hocoalg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string write(const std::string& name, const Json& j) { return write(name, j.dump()); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  Json output() const { return Json::parse(out_.str()); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, HomologyOfTwoSphere) {
  const auto s2 = write("s2.json", sset_to_json(sphere(2)));
  ASSERT_EQ(run({"homology", "--in", s2, "--max-degree", "4"}), cli::kPass) << err_.str();
  const Json j = output();
  EXPECT_EQ(j["H"], Json::parse(R"({"2": "Z"})"));
  EXPECT_EQ(j["command"], "homology");
  EXPECT_EQ(j["params"]["max_degree"], 4);
  EXPECT_EQ(j["params"]["coeff_box"], 3);
  EXPECT_EQ(j["params"]["samples"], 50);
}

TEST_F(CliTest, CoalgebraCheckOnCanonicalCircle) {
  const auto s1 = write("s1.json", sset_to_json(sphere(1)));
  const auto c = (dir_ / "can.json").string();
  ASSERT_EQ(run({"can", "--in", s1, "--max-degree", "3", "--out", c}), cli::kPass) << err_.str();
  EXPECT_EQ(run({"coalg-check", "--in", c}), cli::kPass) << out_.str();
}

TEST_F(CliTest, MutatedCoactionIsAMathFailure) {
  Json c = coalgebra_to_json(can(sphere(1), 2));
  for (auto& entry : c["coaction"]) {
    if (entry["level"] == 1 && entry["basis_index"] == 0) {
      // [e] becomes 2[e].
      entry["image"]["terms"][0][0] = 2;
    }
  }
  const auto path = write("bad.json", c);
  EXPECT_EQ(run({"coalg-check", "--in", path}), cli::kMathFailure);
  EXPECT_FALSE(output()["ok"].get<bool>());
}

TEST_F(CliTest, FoldMapReflectsIsoConsistently) {
  const auto f = write("fold.json", sset_map_to_json(testing::fold_map()));
  ASSERT_EQ(run({"reflect-iso", "--map", f, "--r", "1", "--max-degree", "4"}), cli::kPass) << err_.str();
  const Json j = output();
  EXPECT_FALSE(j["f_iso"].get<bool>());
  EXPECT_FALSE(j["sigma_f_iso"].get<bool>());
  EXPECT_TRUE(j["consistent"].get<bool>());
}

TEST_F(CliTest, MalformedJsonIsAnInputError) {
  const auto bad = write("bad.json", std::string("{\"generators\": [ }"));
  EXPECT_EQ(run({"homology", "--in", bad}), cli::kInputError);
  EXPECT_NE(err_.str().find("malformed"), std::string::npos);
}

TEST_F(CliTest, PreconditionViolationIsAnInputError) {
  // S1 is not 1-reduced.
  const auto s1 = write("s1.json", sset_to_json(sphere(1)));
  EXPECT_EQ(run({"postnikov", "--in", s1, "--pi2", "Z"}), cli::kInputError);
}

TEST_F(CliTest, MissingFileAndUnknownFlag) {
  EXPECT_EQ(run({"homology", "--in", (dir_ / "nope.json").string()}), cli::kInputError);
  EXPECT_EQ(run({"homology", "--bogus"}), cli::kInputError);
  EXPECT_EQ(run({}), cli::kInputError);
}

TEST_F(CliTest, EmittedJsonRoundTrips) {
  const auto x = write("s1xs1.json", sset_to_json(product(sphere(1), sphere(1))));
  const auto once = (dir_ / "can1.json").string();
  const auto twice = (dir_ / "can2.json").string();
  ASSERT_EQ(run({"can", "--in", x, "--max-degree", "3", "--out", once}), cli::kPass);
  // The output (with its params block) is a valid input and reproduces itself.
  const KCoalgebra c = coalgebra_from_json(Json::parse(std::ifstream(once)));
  write("reread.json", coalgebra_to_json(c));
  Json a = Json::parse(std::ifstream(once));
  a.erase("command");
  a.erase("params");
  EXPECT_EQ(a, coalgebra_to_json(c));

  ASSERT_EQ(run({"primitives", "--in", once, "--max-degree", "3", "--out", twice}), cli::kPass) << err_.str();
  const FiniteSimplicialSet p = sset_from_json(Json::parse(std::ifstream(twice)));
  const auto xs = product(sphere(1), sphere(1));
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(p.count(n), xs.count(n));
}

TEST_F(CliTest, DeterministicUnderSeed) {
  const auto s1 = write("s1.json", sset_to_json(sphere(1)));
  const auto c = (dir_ / "can.json").string();
  ASSERT_EQ(run({"can", "--in", s1, "--max-degree", "3", "--out", c}), cli::kPass);
  ASSERT_EQ(run({"decompose", "--in", c, "--seed", "9", "--w-size", "4"}), cli::kPass) << err_.str();
  const std::string first = out_.str();
  ASSERT_EQ(run({"decompose", "--in", c, "--seed", "9", "--w-size", "4"}), cli::kPass);
  EXPECT_EQ(out_.str(), first);
  ASSERT_EQ(run({"cobar-check", "--in", s1, "--codegree", "2", "--max-degree", "2", "--samples", "10"}), cli::kPass);
  const std::string cobar = out_.str();
  ASSERT_EQ(run({"cobar-check", "--in", s1, "--codegree", "2", "--max-degree", "2", "--samples", "10"}), cli::kPass);
  EXPECT_EQ(out_.str(), cobar);
}

TEST_F(CliTest, EilenbergMacLaneAndPi) {
  const auto k = (dir_ / "k.json").string();
  ASSERT_EQ(run({"em", "--group", "Z/12", "--n", "2", "--max-degree", "4", "--out", k}), cli::kPass) << err_.str();
  ASSERT_EQ(run({"pi", "--in", k}), cli::kPass) << err_.str();
  const Json pi = output()["pi"];
  ASSERT_EQ(pi.size(), 4u);
  for (const char* m : {"0", "1", "3"}) EXPECT_EQ(pi[m], AbelianGroup{}.to_string()) << m;
  EXPECT_EQ(pi["2"], "Z/12");
}

TEST_F(CliTest, TowerCommands) {
  const Json constant{{"kind", "constant"}, {"object", sab_to_json(eilenberg_maclane(Moduli{0}, 1, 5))}, {"max_codegree", 2}};
  const auto t = write("tot.json", constant);
  EXPECT_EQ(run({"tot-res", "--in", t, "--n", "2", "--max-degree", "2"}), cli::kPass) << err_.str() << out_.str();
  const auto s2 = write("s2.json", sset_to_json(sphere(2)));
  EXPECT_EQ(run({"fibrant-report", "--in", s2, "--max-degree", "3"}), cli::kPass) << err_.str() << out_.str();
  EXPECT_EQ(run({"postnikov", "--in", s2, "--pi2", "Z", "--max-degree", "4"}), cli::kPass) << err_.str() << out_.str();
  // Hurewicz gives pi_2(S2) = Z, so Z/2 is caught.
  EXPECT_EQ(run({"postnikov", "--in", s2, "--pi2", "Z/2", "--max-degree", "4"}), cli::kMathFailure) << err_.str();
}

}  // namespace
}  // namespace hocoalg
