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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "epicore/acceptability.hpp"
#include "epicore/coalition.hpp"
#include "epicore/error.hpp"
#include "epicore/game.hpp"

namespace epicore {

// Families of known coalitions, one per player.
class KnowledgeProfile {
 public:
  KnowledgeProfile() = default;
  explicit KnowledgeProfile(std::vector<Family> families) : families_(std::move(families)) {
    for (auto& f : families_) f = canonical_family(std::move(f));
  }

  int players() const { return static_cast<int>(families_.size()); }
  const Family& of(Player i) const { return families_.at(i - 1); }
  const std::vector<Family>& families() const { return families_; }

  // Every S known by i contains i.
  bool respects_membership() const {
    for (Player i = 1; i <= players(); ++i)
      for (Coalition s : of(i))
        if (!s.contains(i)) return false;
    return true;
  }

  Family known_union() const {
    Family u;
    for (const auto& f : families_) u.insert(u.end(), f.begin(), f.end());
    return canonical_family(std::move(u));
  }

  bool covers() const { return known_union().size() == (std::size_t{1} << players()) - 1; }

  friend bool operator==(const KnowledgeProfile&, const KnowledgeProfile&) = default;

 private:
  std::vector<Family> families_;
};

inline std::string to_string(const KnowledgeProfile& p) {
  std::string out;
  for (Player i = 1; i <= p.players(); ++i) {
    if (i > 1) out += " | ";
    out += std::to_string(i) + ": {" + to_key(p.of(i)) + "}";
  }
  return out;
}

inline void require_profile(const TUGame& g, const KnowledgeProfile& p) {
  if (p.players() != g.players())
    throw InvalidInput("profile has " + std::to_string(p.players()) + " families for a " +
                       std::to_string(g.players()) + "-player game");
  for (const auto& f : p.families())
    for (Coalition s : f)
      if (s.empty() || !s.subset_of(g.grand())) throw InvalidInput("profile mentions coalition {" + to_key(s) + "} outside the game");
}

// S_i* = {S : i in S} for every i.
inline KnowledgeProfile full_knowledge(int n) {
  std::vector<Family> fams(n);
  for (Coalition s : all_coalitions(n)) s.for_each([&](Player p) { fams[p - 1].push_back(s); });
  return KnowledgeProfile(std::move(fams));
}

inline KnowledgeProfile empty_profile(int n) { return KnowledgeProfile(std::vector<Family>(n)); }

// Every profile with S_i a subset of {S : i in S}; player 1's family varies slowest.
inline std::vector<KnowledgeProfile> all_profiles(int n) {
  if (n < 1 || n > 3) throw UnsupportedSize("profile enumeration supports 1..3 players, got " + std::to_string(n));
  std::vector<std::vector<Family>> choices(n);
  for (Player i = 1; i <= n; ++i) {
    Family mine;
    for (Coalition s : all_coalitions(n))
      if (s.contains(i)) mine.push_back(s);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << mine.size()); ++m) {
      Family f;
      for (std::size_t k = 0; k < mine.size(); ++k)
        if (m >> k & 1) f.push_back(mine[k]);
      choices[i - 1].push_back(std::move(f));
    }
  }
  std::vector<KnowledgeProfile> out;
  std::vector<Family> cur(n);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.emplace_back(cur);
      return;
    }
    for (const auto& f : choices[i]) {
      cur[i] = f;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<KnowledgeProfile> covering_profiles(int n) {
  std::vector<KnowledgeProfile> out;
  for (auto& p : all_profiles(n))
    if (p.covers()) out.push_back(std::move(p));
  return out;
}

// The integer sweep domain {x in N^n : sum x <= v(N)} with cached data.
class SweepDomain {
 public:
  explicit SweepDomain(const TUGame& g) : game_(&g), xs_(integer_vectors_up_to(g)) {
    scaled_.reserve(xs_.size());
    in_core_.reserve(xs_.size());
    for (const auto& x : xs_) {
      scaled_.push_back(detail::scale(g, x));
      in_core_.push_back(core_membership(g, x));
    }
  }

  const TUGame& game() const { return *game_; }
  std::size_t size() const { return xs_.size(); }
  const PayoffVector& point(std::size_t k) const { return xs_[k]; }
  bool in_core(std::size_t k) const { return in_core_[k]; }

  bool unanimous(std::size_t k, const KnowledgeProfile& p) const {
    for (Player i = 1; i <= game_->players(); ++i)
      if (detail::decide_scaled(*game_, i, p.of(i), scaled_[k]).reason == DecisionCase::StrictImprovement)
        return false;
    return true;
  }

 private:
  const TUGame* game_;
  std::vector<PayoffVector> xs_;
  std::vector<std::vector<std::int64_t>> scaled_;
  std::vector<bool> in_core_;
};

inline std::vector<PayoffVector> unanimous_acceptance_set(const SweepDomain& d, const KnowledgeProfile& p) {
  std::vector<PayoffVector> out;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d.unanimous(k, p)) out.push_back(d.point(k));
  return out;
}

inline std::vector<PayoffVector> unanimous_acceptance_set(const TUGame& g, const KnowledgeProfile& p) {
  require_profile(g, p);
  return unanimous_acceptance_set(SweepDomain(g), p);
}

inline std::string game_id(const TUGame& g) {
  std::string out = "n=" + std::to_string(g.players()) + ";v=";
  bool first = true;
  for (Coalition s : all_coalitions(g.players())) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(g.value(s));
  }
  return out;
}

struct ProfileReport {
  std::string game_id;
  KnowledgeProfile profile;
  bool hypothesis_ok = true;  // every S in S_i contains i
  bool covering = false;
  bool characterizes_core = false;
  // Points where unanimous acceptance and core membership disagree.
  std::vector<PayoffVector> violations;
  friend bool operator==(const ProfileReport&, const ProfileReport&) = default;
};

// Points of the sweep where unanimous acceptance differs from core membership.
inline std::vector<PayoffVector> core_disagreements(const SweepDomain& d, const KnowledgeProfile& p) {
  std::vector<PayoffVector> out;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d.unanimous(k, p) != d.in_core(k)) out.push_back(d.point(k));
  return out;
}

inline ProfileReport characterizes_core(const SweepDomain& d, const KnowledgeProfile& p) {
  ProfileReport r;
  r.game_id = game_id(d.game());
  r.profile = p;
  r.hypothesis_ok = p.respects_membership();
  r.covering = p.covers();
  r.violations = core_disagreements(d, p);
  r.characterizes_core = r.violations.empty();
  return r;
}

inline ProfileReport characterizes_core(const TUGame& g, const KnowledgeProfile& p) {
  require_profile(g, p);
  return characterizes_core(SweepDomain(g), p);
}

// v(N) = v(missing) = n and 0 elsewhere, with a payoff that only a player
// knowing `missing` would reject.
inline std::pair<TUGame, PayoffVector> counterexample_game(int n, Coalition missing) {
  if (missing.empty()) throw InvalidInput("missing coalition must be nonempty");
  if (n < 1 || n > kMaxGamePlayers) throw InvalidInput("player count " + std::to_string(n) + " out of range");
  if (!missing.subset_of(Coalition::grand(n))) throw InvalidInput("missing coalition {" + to_key(missing) + "} outside the game");
  std::vector<std::int64_t> v(std::size_t{1} << n, 0);
  v[Coalition::grand(n).bits()] = n;
  v[missing.bits()] = n;
  TUGame g(n, std::move(v));
  Rational entry = missing == Coalition::grand(n) ? 0 : 1;
  return {std::move(g), PayoffVector(Point(n, entry))};
}

enum class Sweep { Integer, Grid };

// Adding an irrelevant coalition T (i not in T) leaves every verdict of i unchanged.
inline bool irrelevance_invariance(const TUGame& g, Player i, const Family& known, Coalition t,
                                   Sweep sweep = Sweep::Integer) {
  if (i < 1 || i > g.players()) throw InvalidInput("player " + std::to_string(i) + " out of range");
  if (t.empty() || !t.subset_of(g.grand())) throw InvalidInput("coalition {" + to_key(t) + "} outside the game");
  if (t.contains(i)) throw InvalidInput("player " + std::to_string(i) + " belongs to {" + to_key(t) + "}");
  Family base = canonical_family(known);
  if (family_contains(base, t)) throw InvalidInput("{" + to_key(t) + "} is already known");
  Family extended = base;
  extended.push_back(t);
  extended = canonical_family(std::move(extended));
  auto xs = sweep == Sweep::Integer ? integer_vectors_up_to(g) : grid_vectors_up_to(g);
  for (const auto& x : xs)
    if (!(decide(g, i, base, x) == decide(g, i, extended, x))) return false;
  return true;
}

}  // namespace epicore
