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

#include "epicore/serialize.hpp"
#include "support.hpp"

namespace epicore {
namespace {

using R = Rational;

TEST(Json, SyntaxErrorsCarryPosition) {
  try {
    parse_json("{\n  \"players\": 2,\n  oops\n}", "g.json");
    FAIL() << "no exception";
  } catch (const InvalidInput& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("g.json:3:"), std::string::npos) << what;
  }
}

TEST(Json, Rationals) {
  EXPECT_EQ(rational_from_json(Json("3/8")), R(3, 8));
  EXPECT_EQ(rational_from_json(Json(5)), 5);
  EXPECT_EQ(rational_json(R(-3, 8)), Json("-3/8"));
  EXPECT_THROW(rational_from_json(Json::array()), InvalidInput);
  EXPECT_EQ(point_from_json(point_json(Point{R(1, 2), R(7)})), (Point{R(1, 2), R(7)}));
}

TEST(Json, GameRoundTrip) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    TUGame g = testing::random_game(rng, 1 + t % 4, 9);
    EXPECT_EQ(game_from_json(game_json(g)), g);
  }
  Json j = parse_json(R"({"players": 2, "v": {"1": 10, "2": 10, "1,2": 30}})");
  EXPECT_EQ(game_from_json(j), testing::g2());
}

TEST(Json, GameErrors) {
  auto bad = [](const char* text) { return game_from_json(parse_json(text)); };
  EXPECT_THROW(bad(R"({"v": {"1": 1}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"players": 2, "v": {"1": 1, "2": 1}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"players": 2, "v": {"1": 1, "2": 1, "1,2": 2, "2,1": 2}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"players": 2, "v": {"1": 1, "2": 1, "1,3": 2}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"players": 2, "v": {"1": "a", "2": 1, "1,2": 2}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"players": 2, "v": {"1": 1, "2": 1, "1,2": 2}, "bound": 2})"), InvalidInput);
}

TEST(Json, ProfilesAndReports) {
  for (const auto& p : covering_profiles(3)) EXPECT_EQ(profile_from_json(profile_json(p), 3), p);
  EXPECT_EQ(family_from_json(Json::array({"1,2", "1"}), 2), parse_family("1;1,2", 2));
  EXPECT_THROW(profile_from_json(Json::array({"1"}), 2), InvalidInput);
  TUGame g = testing::g2();
  auto r = characterizes_core(g, KnowledgeProfile({parse_family("1", 2), parse_family("2", 2)}));
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(report_from_json(report_json(r), 2), r);
}

TEST(Json, BalancedRoundTrip) {
  for (const auto& b : minimal_balanced_families(3)) EXPECT_EQ(balanced_from_json(balanced_json(b), 3), b);
  EXPECT_THROW(balanced_from_json(parse_json(R"({"family": "1;2", "weights": ["1"]})"), 2), InvalidInput);
}

TEST(Json, VerdictFields) {
  TUGame g = testing::g2();
  auto x = testing::pv({9, 21});
  Family f{Coalition::of({1})};
  Json j = verdict_json(1, f, x, decide(g, 1, f, x));
  EXPECT_EQ(j["verdict"], "unacceptable");
  EXPECT_EQ(j["case"], "case-2.2");
  EXPECT_EQ(j["witness"]["coalition"], "1");
  EXPECT_EQ(j["witness"]["payoff"], Json::array({"10", "0"}));
}

TEST(Json, EconomyAndAllocations) {
  EconomyConfig c{EdgeworthEconomy{8, UtilityKind::CesHalf}, 2};
  EXPECT_EQ(economy_from_json(economy_json(c)), c);
  EXPECT_THROW(economy_from_json(parse_json(R"({"utility": "ces", "rho": "1/3", "grid_denominator": 8})")), InvalidInput);
  EXPECT_THROW(economy_from_json(parse_json(R"({"utility": "ces", "grid_denominator": 0})")), InvalidInput);
  ReplicaEconomy e(c.economy, 2);
  Allocation x = replicate(e, Bundle{R(3, 8), R(3, 8)}, Bundle{R(5, 8), R(5, 8)});
  Json j = allocation_json(e, x);
  EXPECT_TRUE(j.contains("per_type"));
  EXPECT_EQ(allocation_from_json(j), x);
  std::string csv = allocations_csv(e, {x});
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "x1_1_good1,x1_1_good2,x1_2_good1,x1_2_good2,x2_1_good1,x2_1_good2,x2_2_good1,x2_2_good2");
  EXPECT_NE(csv.find("0.375,0.375,0.375,0.375,0.625"), std::string::npos);
}

TEST(ProofJson, GameProofRoundTrip) {
  TUGame g = testing::g2();
  for (auto x : {testing::pv({9, 21}), testing::pv({10, 10})}) {
    ProofTree t = emit_proof(g, 1, {Coalition::of({1})}, x);
    Json j = proof_json(t, ProofSetting{g, std::nullopt});
    ParsedProof back = proof_from_json(parse_json(j.dump()));
    EXPECT_EQ(back.tree, t);
    auto oracle = oracle_for(back.setting);
    EXPECT_TRUE(check_proof(back.tree, *oracle.oracle));
  }
}

TEST(ProofJson, EconomyProofRoundTrip) {
  EconomyConfig c{EdgeworthEconomy{8, UtilityKind::CesHalf}, 1};
  ReplicaEconomy e(c.economy, 1);
  auto w = partial_knowledge_witness(e, replicate(e, Bundle{1, 0}, Bundle{0, 1}));
  ASSERT_TRUE(w);
  ParsedProof back = proof_from_json(parse_json(proof_json(w->proof, ProofSetting{std::nullopt, c}).dump()));
  EXPECT_EQ(back.tree, w->proof);
  auto oracle = oracle_for(back.setting);
  EXPECT_TRUE(check_proof(back.tree, *oracle.oracle));
}

TEST(ProofJson, MalformedFilesAreInputErrors) {
  TUGame g = testing::g2();
  Json j = proof_json(emit_proof(g, 1, {Coalition::of({1})}, testing::pv({9, 21})), ProofSetting{g, std::nullopt});
  Json no_format = j;
  no_format.erase("format");
  EXPECT_THROW(proof_from_json(no_format), InvalidInput);
  Json bad_rule = j;
  bad_rule["root"]["rule"] = "Magic";
  EXPECT_THROW(proof_from_json(bad_rule), InvalidInput);
  Json bad_ref = j;
  bad_ref["root"]["meta"]["principal"] = 100000;
  EXPECT_THROW(proof_from_json(bad_ref), InvalidInput);
  Json bad_op = j;
  bad_op["formulas"][0] = Json{{"op", "xor"}, {"args", Json::array()}};
  EXPECT_THROW(proof_from_json(bad_op), InvalidInput);
  EXPECT_THROW(oracle_for(ProofSetting{}), InvalidInput);
}

// A well-formed file whose tree was edited still parses but fails the check.
TEST(ProofJson, TamperedTreeFailsTheCheck) {
  TUGame g = testing::g2();
  Json j = proof_json(emit_proof(g, 1, {Coalition::of({1})}, testing::pv({9, 21})), ProofSetting{g, std::nullopt});
  j["root"]["sequent"]["prefix"] = Json::array({2});
  ParsedProof back = proof_from_json(j);
  auto oracle = oracle_for(back.setting);
  auto r = check_proof(back.tree, *oracle.oracle);
  EXPECT_FALSE(r);
  EXPECT_TRUE(r.path.empty());
}

}  // namespace
}  // namespace epicore
