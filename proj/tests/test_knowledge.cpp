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

#include <random>

#include "epicore/knowledge.hpp"
#include "support.hpp"

namespace epicore {
namespace {

using testing::g2;

bool unanimous_by_decide(const TUGame& g, const KnowledgeProfile& p, const PayoffVector& x) {
  for (Player i = 1; i <= g.players(); ++i)
    if (!decide(g, i, p.of(i), x).acceptable()) return false;
  return true;
}

TEST(Profile, Counts) {
  EXPECT_EQ(all_profiles(2).size(), 16U);
  EXPECT_EQ(covering_profiles(2).size(), 3U);
  EXPECT_EQ(all_profiles(3).size(), 4096U);
  // Owners must know their singletons, each pair needs one of two members
  // and N one of three: 3^3 * 7.
  EXPECT_EQ(covering_profiles(3).size(), 189U);
  EXPECT_THROW(all_profiles(4), UnsupportedSize);
}

TEST(Profile, CanonicalAndMembership) {
  KnowledgeProfile a({parse_family("1,2;1", 2), parse_family("2", 2)});
  KnowledgeProfile b({parse_family("1;1,2", 2), parse_family("2", 2)});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.respects_membership());
  EXPECT_TRUE(a.covers());
  KnowledgeProfile c({parse_family("2", 2), {}});
  EXPECT_FALSE(c.respects_membership());
  EXPECT_FALSE(c.covers());
  EXPECT_EQ(to_string(a), "1: {1;1,2} | 2: {2}");
  EXPECT_EQ(full_knowledge(3).of(2), parse_family("2;1,2;2,3;1,2,3", 3));
  EXPECT_THROW(require_profile(g2(), full_knowledge(3)), InvalidInput);
}

TEST(Sweep, ScaledPathAgreesWithDecide) {
  std::mt19937_64 rng(17);
  auto profiles = all_profiles(3);
  std::uniform_int_distribution<std::size_t> pick(0, profiles.size() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    TUGame g = testing::random_game(rng, 3, 4);
    SweepDomain d(g);
    for (int draw = 0; draw < 10; ++draw) {
      const auto& p = profiles[pick(rng)];
      for (std::size_t k = 0; k < d.size(); ++k) {
        ASSERT_EQ(d.unanimous(k, p), unanimous_by_decide(g, p, d.point(k)));
        ASSERT_EQ(d.in_core(k), core_membership(g, d.point(k)));
      }
    }
  }
}

TEST(Characterization, FullKnowledgeGivesTheCore) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    TUGame g = testing::random_game(rng, 2 + trial % 2, 4);
    auto report = characterizes_core(g, full_knowledge(g.players()));
    EXPECT_TRUE(report.characterizes_core) << report.game_id;
    EXPECT_EQ(unanimous_acceptance_set(g, full_knowledge(g.players())), enumerate_integer_core(g));
  }
}

TEST(Characterization, TwoPlayerExample) {
  TUGame g = g2();
  auto unanimous = unanimous_acceptance_set(g, empty_profile(2));
  EXPECT_EQ(unanimous.size(), integer_vectors_up_to(g).size());
  auto r = characterizes_core(g, KnowledgeProfile({parse_family("1", 2), parse_family("2", 2)}));
  EXPECT_FALSE(r.characterizes_core);
  EXPECT_FALSE(r.covering);
  // Without {1,2} nobody objects to (10,10).
  EXPECT_NE(std::find(r.violations.begin(), r.violations.end(), testing::pv({10, 10})), r.violations.end());
}

// Both directions on every two-player game with worths up to 3.
TEST(Characterization, CoveringIsExactlyWhatIsNeeded) {
  auto profiles = all_profiles(2);
  testing::for_each_game(2, 3, [&](const TUGame& g) {
    SweepDomain d(g);
    for (const auto& p : profiles)
      if (p.covers()) {
        ASSERT_TRUE(characterizes_core(d, p).characterizes_core) << game_id(g) << " " << to_string(p);
      }
  });
  for (const auto& p : profiles) {
    if (p.covers()) continue;
    auto union_ = p.known_union();
    for (Coalition s : all_coalitions(2)) {
      if (family_contains(union_, s)) continue;
      auto [g, x] = counterexample_game(2, s);
      EXPECT_FALSE(core_membership(g, x));
      EXPECT_TRUE(unanimous_by_decide(g, p, x)) << to_string(p) << " missing " << to_key(s);
    }
  }
}

TEST(Counterexample, EveryMissingCoalitionOfThreePlayers) {
  for (Coalition s : all_coalitions(3)) {
    auto [g, x] = counterexample_game(3, s);
    EXPECT_FALSE(core_membership(g, x)) << to_key(s);
    // Everyone knows everything except s.
    std::vector<Family> fams(3);
    for (Coalition t : all_coalitions(3))
      if (t != s) t.for_each([&](Player p) { fams[p - 1].push_back(t); });
    EXPECT_TRUE(unanimous_by_decide(g, KnowledgeProfile(fams), x)) << to_key(s);
    // Knowing s is enough for its members to object.
    EXPECT_FALSE(unanimous_by_decide(g, full_knowledge(3), x));
  }
  EXPECT_THROW(counterexample_game(2, Coalition::of({3})), InvalidInput);
  EXPECT_THROW(counterexample_game(2, Coalition()), InvalidInput);
}

TEST(Irrelevance, AddingForeignCoalitionsChangesNothing) {
  std::mt19937_64 rng(23);
  auto all = all_coalitions(3);
  for (int trial = 0; trial < 25; ++trial) {
    TUGame g = testing::random_game(rng, 3, 3);
    Player i = 1 + trial % 3;
    Family known;
    for (Coalition s : all)
      if (rng() & 1) known.push_back(s);
    for (Coalition t : all) {
      if (t.contains(i) || family_contains(known, t)) continue;
      EXPECT_TRUE(irrelevance_invariance(g, i, known, t, Sweep::Grid));
    }
  }
}

TEST(Irrelevance, RejectsInvalidArguments) {
  TUGame g = g2();
  EXPECT_THROW(irrelevance_invariance(g, 1, {}, Coalition::of({1})), InvalidInput);
  EXPECT_THROW(irrelevance_invariance(g, 1, {Coalition::of({2})}, Coalition::of({2})), InvalidInput);
  EXPECT_THROW(irrelevance_invariance(g, 1, {}, Coalition::of({3})), InvalidInput);
  EXPECT_THROW(irrelevance_invariance(g, 3, {}, Coalition::of({2})), InvalidInput);
}

// Knowing a coalition one belongs to does matter somewhere.
TEST(Irrelevance, OwnCoalitionsAreRelevant) {
  TUGame g = g2();
  auto x = testing::pv({9, 21});
  EXPECT_NE(decide(g, 1, {}, x), decide(g, 1, {Coalition::of({1})}, x));
}

}  // namespace
}  // namespace epicore
