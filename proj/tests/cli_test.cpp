#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ratiocut/cli.hpp"

namespace fs = std::filesystem;
using namespace ratiocut;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ratiocut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    const char* base = std::getenv("RATIOCUT_TEST_TMP");
    dir_ = fs::path(base ? base : fs::temp_directory_path().string()) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateWritesRows) {
  const auto r = invoke({"generate", "--n-per-moon", "25", "--dim", "4", "--seed", "3",
                         "--out", path("m.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("m.csv"));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
  }
  EXPECT_EQ(rows, 50u);
}

TEST_F(CliTest, GenerateRejectsZeroPoints) {
  const auto r = invoke({"generate", "--n-per-moon", "0", "--out", path("m.csv")});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, ClusterPathEdgeList) {
  const auto g = write("path4.edges", "4\n0 1 1.0\n1 2 1.0\n2 3 1.0\n");
  const auto r = invoke({"cluster", "--graph", g, "--init", "spectral", "--out-prefix",
                         path("p")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto labels = slurp(path("p.labels"));
  EXPECT_TRUE(labels == "0\n0\n1\n1\n" || labels == "1\n1\n0\n0\n") << labels;
  const auto summary = nlohmann::json::parse(slurp(path("p.summary.json")));
  EXPECT_NEAR(summary.at("final_energy").get<double>(), 0.5, 1e-8);
  EXPECT_DOUBLE_EQ(summary.at("ratio_cut").get<double>(), 1.0);
  EXPECT_TRUE(summary.at("converged").get<bool>());
  EXPECT_TRUE(fs::exists(path("p.trace.csv")));
  EXPECT_TRUE(fs::exists(path("p.signal")));
}

TEST_F(CliTest, ClusterMissingInputFails) {
  const auto r = invoke({"cluster", "--in", path("nope.csv"), "--out-prefix", path("x")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("nope.csv"), std::string::npos);
}

TEST_F(CliTest, ClusterDisconnectedGraph) {
  const auto g = write("two.edges", "4\n0 1 1\n2 3 1\n");
  const auto r = invoke({"cluster", "--graph", g, "--out-prefix", path("d")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("2 components"), std::string::npos) << r.err;

  const auto ok = invoke({"cluster", "--graph", g, "--allow-disconnected", "--seed", "1",
                          "--out-prefix", path("d")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto summary = nlohmann::json::parse(slurp(path("d.summary.json")));
  EXPECT_EQ(summary.at("components").get<int>(), 2);
  EXPECT_NEAR(summary.at("final_energy").get<double>(), 0.0, 1e-12);
}

TEST_F(CliTest, ClusterIsDeterministic) {
  ASSERT_EQ(invoke({"generate", "--n-per-moon", "40", "--dim", "3", "--sigma", "0.05",
                    "--out", path("m.csv")}).code, 0);
  for (const char* prefix : {"a", "b"}) {
    const auto r = invoke({"cluster", "--in", path("m.csv"), "--seed", "4", "--allow-disconnected",
                           "--out-prefix", path(prefix)});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  for (const char* ext : {".labels", ".signal", ".trace.csv"})
    EXPECT_EQ(slurp(path(std::string("a") + ext)), slurp(path(std::string("b") + ext))) << ext;
}

TEST_F(CliTest, EvaluatePurity) {
  const auto truth = write("truth", "0\n0\n1\n1\n");
  const auto same = write("same", "0\n0\n1\n1\n");
  const auto flipped = write("flipped", "1\n1\n0\n0\n");
  const auto shorter = write("short", "0\n1\n");
  auto r = invoke({"evaluate", "--labels", same, "--truth", truth});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("purity 1\n"), std::string::npos) << r.out;
  r = invoke({"evaluate", "--labels", flipped, "--truth", truth});
  EXPECT_NE(r.out.find("purity 1\n"), std::string::npos) << r.out;
  r = invoke({"evaluate", "--labels", shorter, "--truth", truth});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, VerifyBattery) {
  auto r = invoke({"verify", "--seeds", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("checks passed"), std::string::npos);
  r = invoke({"verify", "--seeds", "3", "--inner-tol", "1e-1"});
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, UnknownOptionIsUsageError) {
  EXPECT_EQ(invoke({"cluster", "--bogus"}).code, 1);
  EXPECT_EQ(invoke({"cluster", "--graph", "x", "--init", "magic"}).code, 1);
}

TEST(Manifest, JsonRoundTrip) {
  cli::RunManifest m;
  m.descent.c = 0.5;
  m.descent.seed = 42;
  m.descent.inner_tol = 1e-9;
  m.knn.k = 7;
  m.init = "spectral";
  m.threshold = "sweep";
  m.graph = "g.edges";
  const auto back = cli::manifest_from_json(nlohmann::json::parse(cli::to_json(m).dump()));
  EXPECT_EQ(cli::to_json(back), cli::to_json(m));
  EXPECT_EQ(back.descent.seed, 42u);
  EXPECT_EQ(back.knn.k, 7u);
}

TEST_F(CliTest, ConfigFileWithOverride) {
  const auto g = write("path4.edges", "4\n0 1 1.0\n1 2 1.0\n2 3 1.0\n");
  cli::RunManifest m;
  m.graph = g;
  m.init = "spectral";
  m.descent.c = 0.5;
  m.out_prefix = path("cfg");
  write("run.json", cli::to_json(m).dump());
  const auto r = invoke({"cluster", "--config", path("run.json"), "--c", "0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(slurp(path("cfg.summary.json")));
  EXPECT_EQ(summary.at("manifest").at("c").get<double>(), 0.25);
  EXPECT_EQ(summary.at("manifest").at("init").get<std::string>(), "spectral");

  // A summary file is accepted as a config too.
  const auto again = invoke({"cluster", "--config", path("cfg.summary.json"), "--out-prefix",
                             path("cfg2")});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(slurp(path("cfg.labels")), slurp(path("cfg2.labels")));
}
