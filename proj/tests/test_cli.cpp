#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

using namespace favest;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("favest_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

const std::string kIcosahedron = std::string(FAVEST_DATA_DIR) + "/icosahedron_t5.txt";

}  // namespace

TEST_F(CliTest, GenGlWritesRule) {
  EXPECT_EQ(run({"quad", "gen-gl", "--exactness", "3", "--out", path("r.txt")}).code, 0);
  const auto rule = load_rule(path("r.txt"));
  EXPECT_EQ(rule.size(), 8u);
  EXPECT_NEAR(rule.weight_sum(), kFourPi, 1e-13);
  EXPECT_EQ(count_lines(run({"quad", "gen-gl", "--exactness", "0"}).out), 1u);
  EXPECT_EQ(run({"quad", "gen-gl", "--exactness", "-1"}).code, 2);
}

TEST_F(CliTest, QuadCheckExitCodes) {
  run({"quad", "gen-gl", "--exactness", "9", "--out", path("gl.txt")});
  const auto ok = run({"quad", "check", "--file", path("gl.txt"), "--exactness", "9"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("pass"), std::string::npos);
  EXPECT_EQ(run({"quad", "check", "--file", path("gl.txt"), "--exactness", "10"}).code, 1);
  EXPECT_EQ(run({"quad", "check", "--file", kIcosahedron, "--exactness", "5"}).code, 0);
  {
    std::ofstream bad(path("bad.txt"));
    bad << "0 0 1\nnot a point\n";
  }
  EXPECT_EQ(run({"quad", "check", "--file", path("bad.txt"), "--exactness", "1"}).code, 2);
  EXPECT_EQ(run({"quad", "check", "--file", path("missing.txt"), "--exactness", "1"}).code, 2);
}

TEST_F(CliTest, ForwardOfFieldAIsBandLimited) {
  ASSERT_EQ(run({"quad", "gen-gl", "--exactness", "22", "--out", path("gl.txt")}).code, 0);
  ASSERT_EQ(run({"fwd", "--points", path("gl.txt"), "--field", "a", "--degree", "10", "--out",
                 path("c.json")}).code, 0);
  const auto c = load_coefficients(path("c.json"));
  EXPECT_EQ(c.l_max(), 10);
  for (int l = 8; l <= 10; ++l) {
    for (int m = -l; m <= l; ++m) {
      EXPECT_LE(std::abs(c.div(l, m)), 1e-8);
      EXPECT_LE(std::abs(c.curl(l, m)), 1e-8);
    }
  }
  EXPECT_EQ(run({"fwd", "--points", path("nope.txt"), "--field", "a", "--degree", "3"}).code, 2);
}

TEST_F(CliTest, ForwardOfZeroSamplesFile) {
  const auto rule = gl_rule(8);
  save_samples(path("z.csv"), TangentFieldSamples(rule.points, std::vector<CVec3>(rule.size())));
  ASSERT_EQ(run({"fwd", "--exactness", "8", "--field", path("z.csv"), "--degree", "3", "--out",
                 path("c.json")}).code, 0);
  const auto c = load_coefficients(path("c.json"));
  for (const auto& v : c.div.values()) EXPECT_EQ(v, Complex{});
}

TEST_F(CliTest, AdjointOfUnitCoefficient) {
  VectorCoefficients c(2);
  c.div.at(1, 0) = 1.0;
  save_coefficients(path("c.json"), c);
  {
    std::ofstream pts(path("p.txt"));
    pts << "0.6 0 0.8\n0 -1 0\n";
  }
  ASSERT_EQ(run({"adj", "--coeffs", path("c.json"), "--points", path("p.txt"), "--out", path("s.csv")}).code, 0);
  const auto s = load_samples(path("s.csv"));
  ASSERT_EQ(s.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto y = eval_vsh(1, 0, s.points[k]).div;
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(s.values[k][i] - y[i]), 0.0, 1e-14);
  }
  EXPECT_EQ(run({"adj", "--coeffs", path("missing.json")}).code, 2);
}

TEST_F(CliTest, RoundtripTable) {
  const auto r = run({"roundtrip", "--field", "a", "--rule", "gl", "--degrees", "4,10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 3u);
  EXPECT_EQ(r.out.rfind("field,rule,L,N,rel_l2,max_abs\n", 0), 0u);
  const auto empty = run({"roundtrip", "--field", "b", "--degrees"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(count_lines(empty.out), 1u);
  const auto design = run({"roundtrip", "--rule", "design", kIcosahedron, "--exactness", "5", "--degrees", "2"});
  EXPECT_EQ(design.code, 0) << design.err;
  EXPECT_NE(design.out.find("a,design,2,12,"), std::string::npos);
  EXPECT_EQ(run({"roundtrip", "--field", "q", "--degrees", "3"}).code, 2);
  EXPECT_EQ(run({"roundtrip", "--rule", "hex", "--degrees", "3"}).code, 2);
}

TEST_F(CliTest, RepeatRow) {
  const auto r = run({"repeat", "--field", "a", "--degree", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 2u);
  EXPECT_EQ(run({"repeat", "--field", "a"}).code, 2);
}

TEST_F(CliTest, BenchAndStabilityTables) {
  const auto b = run({"bench", "--degrees", "8,16,32", "--reps", "1"});
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(count_lines(b.out), 4u);
  const auto s = run({"--seed", "3", "stability", "--degree", "5", "--n-list", "100"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(count_lines(s.out), 2u);
  EXPECT_EQ(s.out, run({"--seed", "3", "stability", "--degree", "5", "--n-list", "100"}).out);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"fwd", "--field", "a"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ThreadsFlag) {
  const int saved = num_threads();
  EXPECT_EQ(run({"--threads", "2", "repeat", "--degree", "2"}).code, 0);
  EXPECT_EQ(num_threads(), 2);
  set_num_threads(saved);
}
