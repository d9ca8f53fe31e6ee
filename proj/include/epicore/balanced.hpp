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

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "epicore/coalition.hpp"
#include "epicore/error.hpp"
#include "epicore/exact_lp.hpp"
#include "epicore/game.hpp"
#include "epicore/knowledge.hpp"

namespace epicore {

inline constexpr int kMaxBalancedPlayers = 4;

struct BalancedFamily {
  Family family;
  std::vector<Rational> weights;  // aligned with family
  friend bool operator==(const BalancedFamily&, const BalancedFamily&) = default;
};

// Lexicographic on the canonical coalition sequence.
inline bool family_less(const Family& a, const Family& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), CanonicalLess{});
}

namespace detail {

inline void require_family(int n, const Family& f) {
  if (n < 1 || n > kMaxPlayers) throw InvalidInput("player count " + std::to_string(n) + " out of range");
  if (f.empty()) throw InvalidInput("family must be nonempty");
  for (Coalition s : f)
    if (s.empty() || !s.subset_of(Coalition::grand(n)))
      throw InvalidInput("coalition {" + to_key(s) + "} is not a nonempty subset of 1.." + std::to_string(n));
}

inline std::vector<std::vector<Rational>> incidence(int n, const Family& f) {
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k) f[k].for_each([&](Player p) { a[p - 1][k] = 1; });
  return a;
}

}  // namespace detail

// Weights with sum over S containing i of lambda_S = 1 for each i, if any.
inline std::optional<std::vector<Rational>> is_balanced(int n, const Family& f) {
  detail::require_family(n, f);
  LinearProgram lp;
  lp.variables = f.size();
  auto a = detail::incidence(n, f);
  for (Player i = 1; i <= n; ++i) lp.constraints.push_back({a[i - 1], Relation::Equal, Rational(1)});
  LpResult r = solve(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.x;
}

// Balanced families whose incidence vectors are linearly independent, found
// as the vertices of the weight polytope. Exponential; n <= 4.
inline std::vector<BalancedFamily> enumerate_minimal_balanced(int n) {
  if (n < 1 || n > kMaxBalancedPlayers)
    throw UnsupportedSize("minimal balanced families are supported for 1.." + std::to_string(kMaxBalancedPlayers) +
                          " players, got " + std::to_string(n));
  auto all = all_coalitions(n);
  std::vector<BalancedFamily> out;
  Family cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!cur.empty()) {
      auto a = detail::incidence(n, cur);
      if (rank(a) < cur.size()) return;  // dependent columns stay dependent in every superset
      auto w = solve_independent(std::move(a), std::vector<Rational>(n, Rational(1)));
      if (w && std::all_of(w->begin(), w->end(), [](const Rational& x) { return x > 0; }))
        out.push_back({cur, *w});
    }
    if (static_cast<int>(cur.size()) == n) return;
    for (std::size_t k = from; k < all.size(); ++k) {
      cur.push_back(all[k]);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return family_less(a.family, b.family); });
  return out;
}

// Partitions plus the three pairs for n = 3; larger n is enumerated.
inline std::vector<BalancedFamily> minimal_balanced_families(int n) {
  auto c = [](std::initializer_list<Player> m) { return Coalition::of(m); };
  const Rational one = 1, half{1, 2};
  std::vector<BalancedFamily> out;
  switch (n) {
    case 1:
      out = {{{c({1})}, {one}}};
      break;
    case 2:
      out = {{{c({1}), c({2})}, {one, one}}, {{c({1, 2})}, {one}}};
      break;
    case 3:
      out = {
          {{c({1}), c({2}), c({3})}, {one, one, one}},
          {{c({1}), c({2, 3})}, {one, one}},
          {{c({2}), c({1, 3})}, {one, one}},
          {{c({3}), c({1, 2})}, {one, one}},
          {{c({1, 2}), c({1, 3}), c({2, 3})}, {half, half, half}},
          {{c({1, 2, 3})}, {one}},
      };
      break;
    default:
      return enumerate_minimal_balanced(n);
  }
  for (auto& b : out) {
    std::vector<std::size_t> idx(b.family.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return compare(b.family[x], b.family[y]) < 0; });
    BalancedFamily s;
    for (auto k : idx) {
      s.family.push_back(b.family[k]);
      s.weights.push_back(b.weights[k]);
    }
    b = std::move(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return family_less(a.family, b.family); });
  return out;
}

inline Rational balanced_worth(const TUGame& g, const BalancedFamily& b) {
  Rational sum = 0;
  for (std::size_t k = 0; k < b.family.size(); ++k) sum += b.weights[k] * g.value(b.family[k]);
  return sum;
}

// First minimal balanced family with sum lambda_S v(S) > v(N).
inline std::optional<BalancedFamily> bondareva_shapley_violation(const TUGame& g) {
  if (g.players() > kMaxBalancedPlayers)
    throw UnsupportedSize("Bondareva-Shapley check supports at most " + std::to_string(kMaxBalancedPlayers) + " players");
  for (auto& b : minimal_balanced_families(g.players()))
    if (balanced_worth(g, b) > g.value(g.grand())) return b;
  return std::nullopt;
}

inline bool bondareva_shapley_nonempty(const TUGame& g) { return !bondareva_shapley_violation(g); }

// Core feasibility as a linear program over real payoffs. Values are
// non-negative, so x >= 0 loses nothing.
inline std::optional<std::vector<Rational>> core_point_lp(const TUGame& g) {
  const int n = g.players();
  LinearProgram lp;
  lp.variables = n;
  for (Coalition s : all_coalitions(n)) {
    std::vector<Rational> row(n, Rational(0));
    s.for_each([&](Player p) { row[p - 1] = 1; });
    lp.constraints.push_back({std::move(row), s == g.grand() ? Relation::Equal : Relation::GreaterEqual,
                              Rational(g.value(s))});
  }
  LpResult r = solve(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.x;
}

enum class AssignmentMode { Lowest, Exhaustive };

struct Prop51Report {
  bool hypothesis = true;     // every family has an assignment with a unanimous point
  bool core_nonempty = false;
  std::optional<Family> failing_family;
  bool implication_holds() const { return !hypothesis || core_nonempty; }
};

// Each S in the family goes to one of its members. Knowing more only removes
// acceptable points, so single-member assignments are the most permissive.
inline Prop51Report prop51_check(const TUGame& g, AssignmentMode mode = AssignmentMode::Exhaustive) {
  const int n = g.players();
  if (n > kMaxBalancedPlayers)
    throw UnsupportedSize("balanced-knowledge check supports at most " + std::to_string(kMaxBalancedPlayers) + " players");
  SweepDomain domain(g);
  Prop51Report r;
  r.core_nonempty = core_point_lp(g).has_value();
  for (const auto& b : minimal_balanced_families(n)) {
    std::vector<Family> fams(n);
    bool found = false;
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (found) return;
      if (k == b.family.size()) {
        KnowledgeProfile p(fams);
        for (std::size_t x = 0; x < domain.size() && !found; ++x) found = domain.unanimous(x, p);
        return;
      }
      Coalition s = b.family[k];
      for (Player i = 1; i <= n; ++i) {
        if (!s.contains(i)) continue;
        fams[i - 1].push_back(s);
        self(self, k + 1);
        fams[i - 1].pop_back();
        if (mode == AssignmentMode::Lowest) break;
      }
    };
    rec(rec, 0);
    if (!found) {
      r.hypothesis = false;
      r.failing_family = b.family;
      break;
    }
  }
  return r;
}

}  // namespace epicore
