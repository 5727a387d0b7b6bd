#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <unistd.h>

#include "latcomp/generators.hpp"
#include "latcomp/io.hpp"
#include "latcomp/rank_conditions.hpp"
#include "latcomp/removability.hpp"
#include "latcomp_cli/cli.hpp"
#include "latcomp_cli/instances.hpp"

namespace latcomp {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("latcomp_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    write_file(path(name), content);
    return path(name);
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  json read_json(const std::string& name) const { return json::parse(read_file(path(name))); }

  std::string partial_file(const std::string& name, const Mask& mask, int r, const std::vector<double>& dense) {
    return write(name, to_json(PartialMatrix(mask, r, dense)).dump());
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, AnalyzeBoundaryRing) {
  const auto mask = write("ring.json", to_json(gen_boundary_cycle(6, 6).mask).dump());
  EXPECT_EQ(run({"analyze", mask, "--rank", "2", "--out", path("rep.json")}), cli::kOk);
  const auto rep = read_json("rep.json");
  EXPECT_EQ(rep["L"], 0);
  EXPECT_EQ(rep["completable"], true);
}

TEST_F(CliTest, AnalyzeCounterexample) {
  const auto mask = write("bad.txt", mask_to_ascii(gen_nonremovable_counterexample(6, 6).mask));
  EXPECT_EQ(run({"analyze", mask, "--rank", "2", "--out", path("rep.json")}), cli::kNegative);
  EXPECT_FALSE(read_json("rep.json")["not_removable"].empty());
  EXPECT_NE(err_.str().find("NotRemovable"), std::string::npos) << err_.str();
}

TEST_F(CliTest, AnalyzeHigherRankNeedsWalks) {
  const auto mask = write("ring.json", to_json(gen_boundary_cycle(6, 6).mask).dump());
  EXPECT_EQ(run({"analyze", mask, "--rank", "3"}), cli::kUsage);
  EXPECT_NE(err_.str().find("--walks"), std::string::npos);
}

TEST_F(CliTest, AnalyzeBranchingSupport) {
  const auto mask = write("plus.txt", ".#.\n###\n.#.\n");
  EXPECT_EQ(run({"analyze", mask}), cli::kAmbiguous);
  EXPECT_NE(err_.str().find("(2,2)"), std::string::npos) << err_.str();
}

TEST_F(CliTest, AnalyzeMalformedInput) {
  EXPECT_EQ(run({"analyze", write("bad.json", "{\"m\": 3}")}), cli::kUsage);
  EXPECT_EQ(run({"analyze", path("missing.json")}), cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}), cli::kUsage);
  EXPECT_EQ(run({}), cli::kUsage);
}

TEST_F(CliTest, AnalyzeNestedWalks) {
  ASSERT_EQ(run({"generate", "nested", "--m", "20", "--n", "20", "--rank", "3", "--min-cell", "4", "--out", path("nn")}),
            cli::kOk);
  EXPECT_EQ(run({"analyze", path("nn.mask.json"), "--rank", "3", "--walks", path("nn.walks.json"), "--out", path("c.json")}),
            cli::kOk);
  const auto rep = read_json("c.json");
  EXPECT_EQ(rep["is_c_graph"], true);
  EXPECT_EQ(rep["kappa"], 7);
  // walks alone leave the auxiliary runs uncovered
  auto walks = read_json("nn.walks.json");
  walks["auxiliary"] = json::array();
  const auto bare = write("bare.json", walks.dump());
  EXPECT_EQ(run({"analyze", path("nn.mask.json"), "--rank", "3", "--walks", bare}), cli::kUsage);
}

TEST_F(CliTest, GenerateFamilies) {
  EXPECT_EQ(run({"generate", "nested", "--m", "20", "--n", "20", "--rank", "3", "--out", path("n")}), cli::kOk);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(fs::exists(path("n.walk" + std::to_string(i) + ".json")));
  EXPECT_TRUE(fs::exists(path("n.aux0.json")));
  EXPECT_NE(out_.str().find("kappa=7"), std::string::npos) << out_.str();

  EXPECT_EQ(run({"generate", "boundary", "--m", "6", "--n", "6", "--out", path("b")}), cli::kOk);
  EXPECT_EQ(mask_from_json(read_json("b.mask.json")), gen_boundary_cycle(6, 6).mask);

  EXPECT_EQ(run({"generate", "staircase", "--m", "10", "--n", "10", "--profile", "4x4,4x4,4x4", "--out", path("s")}),
            cli::kOk);
  EXPECT_EQ(run({"generate", "staircase", "--m", "10", "--n", "10", "--profile", "4x4,4x4,9x4", "--out", path("s")}),
            cli::kUsage);
  EXPECT_EQ(run({"generate", "counterexample", "--m", "5", "--n", "5", "--out", path("c")}), cli::kUsage);
  EXPECT_EQ(run({"generate", "hexagon", "--m", "5", "--n", "5", "--out", path("c")}), cli::kUsage);
}

TEST_F(CliTest, CompleteRankTwoRing) {
  std::mt19937_64 rng(1);
  const auto inst = gen_boundary_cycle(6, 6);
  const auto file = partial_file("p.json", inst.mask, 2, cli::random_low_rank(6, 6, 2, rng));
  EXPECT_EQ(run({"complete", file, "--out", path("c.json")}), cli::kOk);
  const auto c = read_json("c.json");
  for (const char* key : {"status", "m", "n", "matrix", "unfilled", "fill_order", "certificate", "rank_check"})
    EXPECT_TRUE(c.contains(key)) << key;
  EXPECT_EQ(c["status"], "complete");
  EXPECT_EQ(c["rank_check"]["passed"], true);
  EXPECT_LT(c["rank_check"]["sigma_ratio"].get<double>(), 1e-8);
}

TEST_F(CliTest, CompleteExactVerifiesCertificate) {
  std::mt19937_64 rng(2);
  const auto inst = gen_boundary_cycle(4, 4);
  int verified = 0;
  for (int t = 0; t < 5; ++t) {
    const auto file = partial_file("p.json", inst.mask, 2, cli::random_integer_low_rank(4, 4, 2, rng));
    const int code = run({"complete", file, "--exact", "--out", path("c.json")});
    if (code == cli::kGenericity) continue;
    ASSERT_EQ(code, cli::kOk) << err_.str();
    EXPECT_EQ(read_json("c.json")["certificate_verified"], true);
    ++verified;
  }
  EXPECT_GT(verified, 0);
}

TEST_F(CliTest, CompleteGreedyPartial) {
  Mask mask(4, 4);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 4; ++j) mask.insert({i, j});
  mask.insert({4, 1});
  std::mt19937_64 rng(3);
  const auto file = partial_file("p.json", mask, 2, cli::random_low_rank(4, 4, 2, rng));
  EXPECT_EQ(run({"complete", file, "--engine", "greedy", "--out", path("c.json")}), cli::kPartial);
  EXPECT_EQ(read_json("c.json")["unfilled"].size(), 3U);
}

TEST_F(CliTest, CompleteRejectsNan) {
  const auto file = write("p.json", R"({"m":2,"n":2,"rank":1,"entries":[[1,1,1],[1,2,"nan"],[2,1,3]]})");
  EXPECT_EQ(run({"complete", file}), cli::kUsage);
}

TEST_F(CliTest, CompleteNonGeneric) {
  const auto inst = gen_boundary_cycle(6, 6);
  const auto file = partial_file("p.json", inst.mask, 2, std::vector<double>(36, 1.0));
  EXPECT_EQ(run({"complete", file}), cli::kGenericity);
  EXPECT_NE(err_.str().find("minor"), std::string::npos) << err_.str();
}

TEST_F(CliTest, CompleteStructuredRefusesCounterexample) {
  std::mt19937_64 rng(4);
  const auto inst = gen_nonremovable_counterexample(6, 6);
  const auto file = partial_file("p.json", inst.mask, 2, cli::random_low_rank(6, 6, 2, rng));
  EXPECT_EQ(run({"complete", file}), cli::kNegative);
}

TEST_F(CliTest, CompleteNestedWithWalks) {
  ASSERT_EQ(run({"generate", "nested", "--m", "20", "--n", "20", "--rank", "3", "--out", path("nn")}), cli::kOk);
  std::mt19937_64 rng(5);
  const auto mask = mask_from_json(read_json("nn.mask.json"));
  const auto file = partial_file("p.json", mask, 3, cli::random_low_rank(20, 20, 3, rng));
  EXPECT_EQ(run({"complete", file, "--walks", path("nn.walks.json"), "--out", path("c.json")}), cli::kOk);
  EXPECT_EQ(run({"complete", file}), cli::kUsage);
}

TEST_F(CliTest, RenderIsByteIdentical) {
  const auto mask = write("m.json", to_json(gen_staircase_cycle(10, 10, {{4, 4}, {4, 4}, {4, 4}}).mask).dump());
  ASSERT_EQ(run({"render", mask, "--out", path("a.svg")}), cli::kOk);
  ASSERT_EQ(run({"render", mask, "--out", path("b.svg")}), cli::kOk);
  EXPECT_EQ(read_file(path("a.svg")), read_file(path("b.svg")));
  EXPECT_NE(read_file(path("a.svg")).find("level-1"), std::string::npos);
  ASSERT_EQ(run({"render", mask, "--format", "txt"}), cli::kOk);
  EXPECT_EQ(out_.str().find('\n'), 10U);
  EXPECT_EQ(run({"render", write("bad.txt", "#?\n")}), cli::kUsage);
}

TEST_F(CliTest, Selftest) {
  EXPECT_EQ(run({"selftest", "--trials", "2"}), cli::kOk);
  EXPECT_NE(out_.str().find("PASS"), std::string::npos);
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
}

TEST(Instances, SeedFromEnvironment) {
  ::setenv("LATCOMP_SEED", "77", 1);
  EXPECT_EQ(cli::seed_from_env(), 77U);
  ::setenv("LATCOMP_SEED", "abc", 1);
  EXPECT_EQ(cli::seed_from_env(5), 5U);
  ::unsetenv("LATCOMP_SEED");
  EXPECT_EQ(cli::seed_from_env(9), 9U);
}

TEST(Instances, CompletedMatricesHaveTargetRank) {
  std::mt19937_64 rng(6);
  const auto fam = gen_nested_staircase_family(20, 20, 3, 4);
  const auto rep = verify_c_graph(fam.mask, 3, fam.walks, fam.auxiliary);
  const auto stair = gen_staircase_cycle(10, 10, {{4, 4}, {4, 4}, {4, 4}});
  const auto srep = removability_analysis(stair.circuit, stair.mask);
  for (int t = 0; t < 5; ++t) {
    const auto truth = cli::random_low_rank(20, 20, 3, rng);
    const auto c = complete_rank_r(cli::observe(fam.mask, 3, truth), rep);
    EXPECT_LT(cli::singular_ratio(c.matrix, 20, 20, 3), 1e-8);
    EXPECT_LT(cli::relative_error(c, truth), 1e-6);
    const auto t2 = cli::random_low_rank(10, 10, 2, rng);
    const auto c2 = complete_rank2(cli::observe(stair.mask, 2, t2), srep, stair.circuit);
    EXPECT_LT(cli::singular_ratio(c2.matrix, 10, 10, 2), 1e-8);
  }
  // a full-rank matrix is far from rank 2
  EXPECT_GT(cli::singular_ratio(cli::random_low_rank(6, 6, 6, rng), 6, 6, 2), 1e-3);
}

}  // namespace
}  // namespace latcomp
