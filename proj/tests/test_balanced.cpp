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

#include "epicore/balanced.hpp"
#include "epicore/exact_lp.hpp"
#include "support.hpp"

namespace epicore {
namespace {

using R = Rational;

TEST(ExactLp, SmallOptimum) {
  // min -x - y  s.t.  x + 2y <= 4,  3x + y <= 6: optimum at (8/5, 6/5).
  LinearProgram lp{2, {R(-1), R(-1)}, {{{R(1), R(2)}, Relation::LessEqual, R(4)}, {{R(3), R(1)}, Relation::LessEqual, R(6)}}};
  LpResult r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, R(-14, 5));
  EXPECT_EQ(r.x, (std::vector<R>{R(8, 5), R(6, 5)}));
}

TEST(ExactLp, EqualityAndLowerBounds) {
  // min x  s.t.  x + y = 3,  x >= 1,  y >= 1.
  LinearProgram lp{2, {R(1), R(0)},
                   {{{R(1), R(1)}, Relation::Equal, R(3)},
                    {{R(1), R(0)}, Relation::GreaterEqual, R(1)},
                    {{R(0), R(1)}, Relation::GreaterEqual, R(1)}}};
  LpResult r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.x[1], 2);
}

TEST(ExactLp, InfeasibleAndUnbounded) {
  LinearProgram bad{1, {}, {{{R(1)}, Relation::LessEqual, R(1)}, {{R(1)}, Relation::GreaterEqual, R(2)}}};
  EXPECT_EQ(solve(bad).status, LpStatus::Infeasible);
  LinearProgram open{1, {R(-1)}, {{{R(1)}, Relation::GreaterEqual, R(1)}}};
  EXPECT_EQ(solve(open).status, LpStatus::Unbounded);
}

TEST(ExactLp, NegativeRightHandSides) {
  // -x <= -2 is x >= 2.
  LinearProgram lp{1, {R(1)}, {{{R(-1)}, Relation::LessEqual, R(-2)}}};
  LpResult r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.x[0], 2);
}

TEST(ExactLp, RedundantEqualities) {
  LinearProgram lp{2, {},
                   {{{R(1), R(1)}, Relation::Equal, R(2)},
                    {{R(2), R(2)}, Relation::Equal, R(4)}}};
  LpResult r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.x[0] + r.x[1], 2);
}

TEST(ExactLp, IndependentSolveAndRank) {
  auto x = solve_independent({{R(1), R(1)}, {R(1), R(-1)}, {R(2), R(0)}}, {R(3), R(1), R(4)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (std::vector<R>{R(2), R(1)}));
  EXPECT_FALSE(solve_independent({{R(1), R(1)}, {R(1), R(-1)}, {R(2), R(0)}}, {R(3), R(1), R(5)}));
  EXPECT_FALSE(solve_independent({{R(1), R(2)}, {R(2), R(4)}}, {R(1), R(2)}));
  EXPECT_EQ(rank({{R(1), R(2)}, {R(2), R(4)}}), 1U);
  EXPECT_EQ(rank({{R(1), R(0), R(1)}, {R(0), R(1), R(1)}, {R(1), R(1), R(2)}}), 2U);
}

TEST(Balanced, PartitionAndPairsAreBalanced) {
  auto w = is_balanced(3, parse_family("1;2,3", 3));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (std::vector<R>{R(1), R(1)}));
  auto pairs = is_balanced(3, parse_family("1,2;1,3;2,3", 3));
  ASSERT_TRUE(pairs);
  for (auto& e : *pairs) EXPECT_EQ(e, R(1, 2));
  EXPECT_FALSE(is_balanced(3, parse_family("1;1,2", 3)));
  EXPECT_THROW(is_balanced(3, {}), InvalidInput);
}

TEST(Balanced, MinimalCounts) {
  EXPECT_EQ(enumerate_minimal_balanced(1).size(), 1U);
  EXPECT_EQ(enumerate_minimal_balanced(2).size(), 2U);
  EXPECT_EQ(enumerate_minimal_balanced(3).size(), 6U);
  EXPECT_EQ(enumerate_minimal_balanced(4).size(), 42U);
  EXPECT_THROW(minimal_balanced_families(5), UnsupportedSize);
}

TEST(Balanced, TableMatchesEnumeration) {
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(minimal_balanced_families(n), enumerate_minimal_balanced(n)) << n;
}

// Weights re-evaluated from scratch; no proper subfamily is balanced.
TEST(Balanced, WeightsAndMinimality) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& b : minimal_balanced_families(n)) {
      ASSERT_EQ(b.family.size(), b.weights.size());
      for (Player i = 1; i <= n; ++i) {
        R sum = 0;
        for (std::size_t k = 0; k < b.family.size(); ++k)
          if (b.family[k].contains(i)) sum += b.weights[k];
        EXPECT_EQ(sum, 1) << to_key(b.family);
      }
      for (auto& w : b.weights) EXPECT_GT(w, 0);
      const std::size_t m = b.family.size();
      for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
        Family sub;
        for (std::size_t k = 0; k < m; ++k)
          if (mask >> k & 1) sub.push_back(b.family[k]);
        EXPECT_FALSE(is_balanced(n, sub)) << to_key(b.family) << " contains " << to_key(sub);
      }
    }
}

// Bondareva-Shapley against the LP, with both answers certified.
TEST(BondarevaShapley, AgreesWithLpOnSmallGames) {
  testing::for_each_game(3, 2, [](const TUGame& g) {
    auto point = core_point_lp(g);
    auto violation = bondareva_shapley_violation(g);
    ASSERT_NE(point.has_value(), violation.has_value()) << game_id(g);
    if (point) {
      ASSERT_TRUE(core_membership(g, PayoffVector(Point(point->begin(), point->end()))));
    } else {
      R worth = 0;
      for (std::size_t k = 0; k < violation->family.size(); ++k)
        worth += violation->weights[k] * R(g.value(violation->family[k]));
      ASSERT_GT(worth, g.value(g.grand()));
    }
  });
}

TEST(BondarevaShapley, FourPlayersAgainstLp) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    TUGame g = testing::random_game(rng, 4, 6);
    EXPECT_EQ(bondareva_shapley_nonempty(g), core_point_lp(g).has_value()) << game_id(g);
  }
}

TEST(BondarevaShapley, PairGameViolatesThePairFamily) {
  TUGame g(3, {0, 0, 0, 2, 0, 2, 2, 2});
  auto v = bondareva_shapley_violation(g);
  ASSERT_TRUE(v);
  EXPECT_EQ(balanced_worth(g, *v), 3);
  EXPECT_FALSE(core_point_lp(g));
}

TEST(BalancedKnowledge, ImplicationHoldsOnSmallGames) {
  testing::for_each_game(3, 2, [](const TUGame& g) {
    auto r = prop51_check(g);
    ASSERT_TRUE(r.implication_holds()) << game_id(g);
    ASSERT_EQ(r.core_nonempty, bondareva_shapley_nonempty(g));
    if (!enumerate_integer_core(g).empty()) {
      ASSERT_TRUE(r.hypothesis) << game_id(g);
    }
    if (prop51_check(g, AssignmentMode::Lowest).hypothesis) {
      ASSERT_TRUE(r.hypothesis);
    }
  });
}

TEST(BalancedKnowledge, EmptyCoreIsDetected) {
  TUGame g(3, {0, 0, 0, 2, 0, 2, 2, 2});
  auto r = prop51_check(g);
  EXPECT_FALSE(r.hypothesis);
  EXPECT_FALSE(r.core_nonempty);
  ASSERT_TRUE(r.failing_family);
  EXPECT_EQ(to_key(*r.failing_family), "1,2;1,3;2,3");
}

}  // namespace
}  // namespace epicore
