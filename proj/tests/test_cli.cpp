// Copyright 2026 The epicore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "epicore/cli.hpp"
#include "support.hpp"

namespace epicore {
namespace {

namespace fs = std::filesystem;
using testing::data_file;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "epicore");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("epicore-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  fs::path dir;
};

TEST_F(Cli, CoreListsElevenVectors) {
  auto r = invoke({"core", data_file("g2.json"), "-o", path("core.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 11);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "(10,20)");
  Json j = parse_json(slurp(path("core.json")));
  EXPECT_EQ(j["core"].size(), 11U);
}

TEST_F(Cli, AcceptReportsVerdictAndWitness) {
  auto r = invoke({"accept", data_file("g2.json"), "-i", "1", "-K", "1", "-x", "9,21"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("unacceptable (case-2.2) witness {1} (10,0)"), std::string::npos) << r.out;
  r = invoke({"accept", data_file("g2.json"), "-i", "1", "-x", "9,21"});
  EXPECT_NE(r.out.find("acceptable (case-2.1)"), std::string::npos) << r.out;
}

TEST_F(Cli, ProveThenCheck) {
  auto r = invoke({"prove", data_file("g2.json"), "-i", "1", "-K", "1", "-x", "9,21", "-o", path("p.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("checked"), std::string::npos);
  r = invoke({"check", path("p.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("valid"), std::string::npos);

  Json j = parse_json(slurp(path("p.json")));
  j["root"]["children"][0]["sequent"]["prefix"] = Json::array({2});
  write("bad.json", j.dump());
  r = invoke({"check", path("bad.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("invalid at /"), std::string::npos) << r.out;
}

TEST_F(Cli, ProveNeedsOutput) {
  auto r = invoke({"prove", data_file("g2.json"), "-i", "1", "-x", "9,21"});
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, VerifyProfiles) {
  auto r = invoke({"verify", data_file("g2.json"), "-o", path("v.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3 profiles, 3 characterize the core, 0 covering profiles fail"), std::string::npos) << r.out;
  r = invoke({"verify", data_file("g2.json"), "--profiles", data_file("g2_split_profile.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("2 profiles, 1 characterize"), std::string::npos) << r.out;
  r = invoke({"--threads", "2", "verify", data_file("pair_game.json"), "--profiles", "all"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("4096 profiles"), std::string::npos) << r.out;
}

TEST_F(Cli, BalancedListing) {
  auto r = invoke({"balanced", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
  EXPECT_NE(r.out.find("{1,2;1,3;2,3} weights 1/2 1/2 1/2"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"balanced", "5"}).code, 3);
}

TEST_F(Cli, BondarevaShapley) {
  auto r = invoke({"bs", data_file("pair_game.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("core empty"), std::string::npos);
  EXPECT_NE(r.out.find("hypothesis: fails at {1,2;1,3;2,3}"), std::string::npos) << r.out;
  r = invoke({"bs", data_file("g2.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("core nonempty"), std::string::npos);
}

TEST_F(Cli, ReplicaSummary) {
  auto r = invoke({"replica", data_file("edgeworth.json"), "-k", "2", "-o", path("r.json"), "--csv", path("r.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("effective coalitions: 11"), std::string::npos);
  EXPECT_NE(r.out.find("knowledge growth: count 11, average 11/4"), std::string::npos) << r.out;
  Json j = parse_json(slurp(path("r.json")));
  EXPECT_EQ(j["grid_core"].size(), 1U);
  std::string csv = slurp(path("r.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  r = invoke({"replica", data_file("edgeworth.json"), "-k", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("grid core skipped"), std::string::npos) << r.out;
}

TEST_F(Cli, InputErrorsExitOne) {
  EXPECT_EQ(invoke({"core", path("missing.json")}).code, 1);
  auto r = invoke({"core", write("broken.json", "{\"players\": 2,,}")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("broken.json:1:"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"core", write("short.json", R"({"players": 2, "v": {"1": 1, "2": 1}})")}).code, 1);
  EXPECT_EQ(invoke({"accept", data_file("g2.json"), "-i", "1", "-x", "1/3,0"}).code, 1);
  EXPECT_EQ(invoke({"accept", data_file("g2.json"), "-i", "3", "-x", "1,0"}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
}

TEST_F(Cli, HelpExitsCleanly) {
  auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("replica"), std::string::npos);
}

TEST_F(Cli, UnsupportedSizeExitsThree) {
  auto g = write("big.json", R"({"players": 3, "v": {"1": 0, "2": 0, "3": 0, "1,2": 0, "1,3": 0, "2,3": 0, "1,2,3": 400}})");
  EXPECT_EQ(invoke({"prove", g, "-i", "1", "-x", "0,0,0", "-o", path("p.json")}).code, 3);
}

}  // namespace
}  // namespace epicore
