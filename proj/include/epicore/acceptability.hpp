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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epicore/emitter.hpp"
#include "epicore/formula.hpp"
#include "epicore/game.hpp"
#include "epicore/proof.hpp"
#include "epicore/sequent.hpp"

namespace epicore {

inline constexpr std::uint64_t kMaxGridPoints = 4'000'000;

// Non-logical axioms over the payoff grid of a TU game.
class GridOracle : public ComparisonOracle {
 public:
  explicit GridOracle(const TUGame& g) : n_(g.players()), bound_(g.bound()) {}
  bool admits(const Point& p) const override {
    if (static_cast<int>(p.size()) != n_) return false;
    for (const auto& e : p)
      if (e.numerator() < 0 || e > bound_ || n_ % e.denominator() != 0) return false;
    return true;
  }
  bool admits_scope(Coalition s) const override { return s.max_player() <= n_; }
  bool slot_geq(const Point& y, const Point& x, Player i) const override { return !(y[i - 1] < x[i - 1]); }

 private:
  int n_;
  std::int64_t bound_;
};

// Number of At1 payoff vectors, (nM+1)^n.
inline std::uint64_t grid_size(const TUGame& g) {
  std::uint64_t side = static_cast<std::uint64_t>(g.players() * g.bound() + 1);
  std::uint64_t total = 1;
  for (int k = 0; k < g.players(); ++k) {
    if (total > kMaxGridPoints / side + 1) return kMaxGridPoints + 1;
    total *= side;
  }
  return total;
}

// All At1 payoff vectors in lexicographic order.
inline std::vector<Point> grid_points(const TUGame& g) {
  if (grid_size(g) > kMaxGridPoints)
    throw UnsupportedSize("payoff grid of " + std::to_string(g.players()) + " players with bound " +
                          std::to_string(g.bound()) + " is too large to enumerate");
  const int n = g.players();
  const std::int64_t top = n * g.bound();
  std::vector<Point> out;
  out.reserve(grid_size(g));
  std::vector<std::int64_t> units(n, 0);
  while (true) {
    Point p;
    p.reserve(n);
    for (auto u : units) p.emplace_back(u, n);
    out.push_back(std::move(p));
    int k = n - 1;
    while (k >= 0 && units[k] == top) units[k--] = 0;
    if (k < 0) break;
    ++units[k];
  }
  return out;
}

// Gamma_i(S_i) as a membership predicate: y^S is present iff S is known and
// sum_{i in S} y_i <= v(S); every other At1 atom is present negated.
class KnowledgeContext : public SequentContext {
 public:
  KnowledgeContext(std::shared_ptr<const TUGame> game, Family known)
      : game_(std::move(game)), known_(canonical_family(std::move(known))), oracle_(*game_) {
    mask_.assign(std::size_t{1} << game_->players(), false);
    for (Coalition s : known_) {
      if (s.empty() || !s.subset_of(game_->grand())) throw InvalidInput("known coalition outside the player set");
      mask_[s.bits()] = true;
    }
    key_ = "gamma;known=" + to_key(known_) + ";n=" + std::to_string(game_->players()) +
           ";M=" + std::to_string(game_->bound()) + ";v=";
    for (std::size_t m = 1; m < game_->values().size(); ++m) key_ += std::to_string(game_->values()[m]) + ",";
  }

  bool contains(const Formula& f) const override {
    bool negated = f.kind() == Connective::Not;
    const Formula& atom = negated ? f.operand() : f;
    if (atom.kind() != Connective::Ach) return false;
    const Achievable& a = atom.achievable();
    if (!a.coalition.subset_of(game_->grand()) || !oracle_.admits(a.payoff)) return false;
    return positive(a) != negated;
  }
  bool contains_negation_of(const Formula& f) const override {
    if (f.kind() != Connective::Ach) return f.kind() == Connective::Not && contains(f.operand());
    const Achievable& a = f.achievable();
    return a.coalition.subset_of(game_->grand()) && oracle_.admits(a.payoff) && !positive(a);
  }
  const std::string& key() const override { return key_; }

  bool positive(const Achievable& a) const {
    if (!mask_[a.coalition.bits()]) return false;
    Rational total = 0;
    a.coalition.for_each([&](Player p) { total += a.payoff[p - 1]; });
    return total <= game_->value(a.coalition);
  }
  const TUGame& game() const { return *game_; }
  const Family& known() const { return known_; }

 private:
  std::shared_ptr<const TUGame> game_;
  Family known_;
  GridOracle oracle_;
  std::vector<bool> mask_;
  std::string key_;
};

inline FormulaSet knowledge_context(const TUGame& g, const Family& known) {
  return FormulaSet::of_context(std::make_shared<KnowledgeContext>(std::make_shared<TUGame>(g), known));
}

// I(S) with coordinates outside S set to 0, sorted canonically.
inline std::vector<Formula> knowledge_set(const TUGame& g, Coalition s) {
  if (s.empty() || !s.subset_of(g.grand())) throw InvalidInput("coalition outside the player set");
  const int n = g.players();
  std::vector<Player> members = s.members();
  const std::int64_t cap = n * g.bound();
  std::vector<Formula> out;
  Point y(n, Rational(0));
  auto rec = [&](auto&& self, std::size_t k, std::int64_t left) -> void {
    if (k == members.size()) {
      out.push_back(ach(y, s));
      return;
    }
    for (std::int64_t u = 0; u <= std::min(cap, left); ++u) {
      y[members[k] - 1] = Rational(u, n);
      self(self, k + 1, left - u);
    }
    y[members[k] - 1] = 0;
  };
  rec(rec, 0, n * g.value(s));
  std::sort(out.begin(), out.end());
  return out;
}

// Gamma_i(S_i) listed explicitly: one literal per At1 atom.
inline FormulaSet gamma(const TUGame& g, const Family& known) {
  KnowledgeContext ctx(std::make_shared<TUGame>(g), known);
  std::vector<Point> grid = grid_points(g);
  std::vector<Formula> out;
  for (Coalition s : all_coalitions(g.players())) {
    for (const Point& y : grid) {
      Formula a = ach(y, s);
      out.push_back(ctx.positive(a.achievable()) ? a : negation(a));
    }
  }
  return FormulaSet(std::move(out));
}

// Builds C_i(x^N) for many payoff vectors of one game, sharing the atoms.
class CriterionBuilder {
 public:
  explicit CriterionBuilder(const TUGame& g) : game_(g), grid_(grid_points(g)) {}

  const TUGame& game() const { return game_; }

  Formula disjunct(Player i, Coalition s, const Point& y, const Point& x) const {
    return disjunct(i, s, y, x, ach(y, s));
  }

  // ~ \/_{S ni i} \/_{y} (y^S & y^S >=_S x^N & y^S >_i x^N)
  Formula build(Player i, const PayoffVector& x) {
    require_player(i);
    require_grid(game_, x);
    std::vector<Formula> terms;
    for (Coalition s : all_coalitions(game_.players())) {
      if (!s.contains(i)) continue;
      const auto& atoms = atoms_for(s);
      for (std::size_t k = 0; k < grid_.size(); ++k) terms.push_back(disjunct(i, s, grid_[k], x.point(), atoms[k]));
    }
    return negation(disj(std::move(terms)));
  }

 private:
  Formula disjunct(Player i, Coalition s, const Point& y, const Point& x, const Formula& atom) const {
    const Coalition all = game_.grand();
    return conj({atom, geq(y, s, s, x, all), strictly_greater(y, s, Coalition::singleton(i), x, all)});
  }

  void require_player(Player i) const {
    if (i < 1 || i > game_.players()) throw InvalidInput("player " + std::to_string(i) + " out of range");
  }

  const std::vector<Formula>& atoms_for(Coalition s) {
    auto it = atoms_.find(s.bits());
    if (it != atoms_.end()) return it->second;
    std::vector<Formula> atoms;
    atoms.reserve(grid_.size());
    for (const Point& y : grid_) atoms.push_back(ach(y, s));
    return atoms_.emplace(s.bits(), std::move(atoms)).first->second;
  }

  TUGame game_;
  std::vector<Point> grid_;
  std::map<std::uint64_t, std::vector<Formula>> atoms_;
};

inline Formula c_formula(const TUGame& g, Player i, const PayoffVector& x) { return CriterionBuilder(g).build(i, x); }

enum class Acceptance { Acceptable, Unacceptable };

// The case of the completeness argument that settles the query.
enum class DecisionCase {
  NoComparableAlternative,  // no y^S >=_S x^N is an axiom
  NoKnownAlternative,       // every such y^S is negated in Gamma_i
  NoStrictImprovement,      // known alternatives exist, none helps player i
  StrictImprovement,        // a known alternative strictly helps player i
};

struct Verdict {
  Acceptance acceptance;
  DecisionCase reason;
  std::optional<BlockingWitness> witness;  // set for Unacceptable
  bool acceptable() const { return acceptance == Acceptance::Acceptable; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline std::string_view to_string(DecisionCase c) {
  switch (c) {
    case DecisionCase::NoComparableAlternative: return "case-1";
    case DecisionCase::NoKnownAlternative: return "case-2.1";
    case DecisionCase::NoStrictImprovement: return "case-2.2-empty";
    case DecisionCase::StrictImprovement: return "case-2.2";
  }
  return "?";
}

namespace detail {

// x scaled by n (integers). Returns the first known S containing i with
// sum_S x < v(S) and the deficit, or the case that applies.
struct ScaledDecision {
  DecisionCase reason;
  Coalition coalition;
  std::int64_t deficit = 0;  // in units of 1/n
};

inline ScaledDecision decide_scaled(const TUGame& g, Player i, const Family& known,
                                    const std::vector<std::int64_t>& scaled) {
  const int n = g.players();
  bool any_known = false;
  for (Coalition s : known) {
    if (!s.contains(i)) continue;
    std::int64_t sum = 0;
    s.for_each([&](Player p) { sum += scaled[p - 1]; });
    std::int64_t deficit = n * g.value(s) - sum;
    if (deficit > 0) return {DecisionCase::StrictImprovement, s, deficit};
    if (deficit == 0) any_known = true;
  }
  return {any_known ? DecisionCase::NoStrictImprovement : DecisionCase::NoKnownAlternative, Coalition(), 0};
}

inline std::vector<std::int64_t> scale(const TUGame& g, const PayoffVector& x) {
  std::vector<std::int64_t> out;
  out.reserve(x.size());
  for (const auto& e : x.point()) out.push_back((e * g.players()).numerator());
  return out;
}

}  // namespace detail

// Closed-form decision. x itself witnesses x^S >=_S x^N, so the first case
// never applies to a well-formed x; the rest reduces to the sums over the
// known coalitions containing i.
inline Verdict decide(const TUGame& g, Player i, const Family& known, const PayoffVector& x) {
  if (i < 1 || i > g.players()) throw InvalidInput("player " + std::to_string(i) + " out of range");
  require_grid(g, x);
  Family fam = canonical_family(known);
  auto d = detail::decide_scaled(g, i, fam, detail::scale(g, x));
  if (d.reason != DecisionCase::StrictImprovement) return Verdict{Acceptance::Acceptable, d.reason, std::nullopt};
  Point y(g.players(), Rational(0));
  d.coalition.for_each([&](Player p) { y[p - 1] = x.at(p); });
  y[i - 1] += Rational(d.deficit, g.players());
  return Verdict{Acceptance::Unacceptable, d.reason, BlockingWitness{d.coalition, PayoffVector(std::move(y))}};
}

// Produces the proof for the verdict of decide(). Throws std::logic_error if
// the template cannot be completed, which would contradict the decision.
inline ProofTree emit_proof(CriterionBuilder& builder, Player i, const Family& known, const PayoffVector& x) {
  const TUGame& g = builder.game();
  Verdict v = decide(g, i, known, x);
  Formula criterion = builder.build(i, x);
  GridOracle oracle(g);
  ProofEmitter emitter({i}, knowledge_context(g, known), oracle);
  std::optional<ProofTree> t;
  if (v.acceptable()) {
    t = emitter.prove_acceptable(criterion);
  } else {
    t = emitter.prove_unacceptable(
        criterion, builder.disjunct(i, v.witness->coalition, v.witness->payoff.point(), x.point()));
  }
  if (!t) throw std::logic_error("proof template failed for player " + std::to_string(i) + " at " + to_string(x));
  return std::move(*t);
}

inline ProofTree emit_proof(const TUGame& g, Player i, const Family& known, const PayoffVector& x) {
  CriterionBuilder builder(g);
  return emit_proof(builder, i, known, x);
}

}  // namespace epicore
