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
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epicore/coalition.hpp"
#include "epicore/error.hpp"
#include "epicore/rational.hpp"

namespace epicore {

// The declaration order is also the canonical order between kinds.
enum class Connective : std::uint8_t { Ach, Geq, Not, Implies, And, Or, Bel };

// x^S: "payoff vector x can be obtained by S".
struct Achievable {
  Point payoff;
  Coalition coalition;
};

// y^T >=_S x^U.
struct Comparison {
  Point lhs;
  Coalition lhs_coalition;
  Coalition scope;
  Point rhs;
  Coalition rhs_coalition;
};

class Formula;

namespace detail {
struct FormulaNode;
}

// Immutable formula handle; copies share structure.
class Formula {
 public:
  Connective kind() const;
  bool is_atom() const { return kind() == Connective::Ach || kind() == Connective::Geq; }

  const Achievable& achievable() const;
  const Comparison& comparison() const;
  // Not/Bel: one operand, Implies: two, And/Or: one per member.
  const std::vector<Formula>& operands() const;
  const Formula& operand() const { return operands().front(); }
  Player agent() const;

  const void* identity() const { return node_.get(); }

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::FormulaNode> node_;

  friend Formula ach(Point, Coalition);
  friend Formula geq(Point, Coalition, Coalition, Point, Coalition);
  friend Formula negation(Formula);
  friend Formula implies(Formula, Formula);
  friend Formula belief(Player, Formula);
  friend Formula make_junction(Connective, std::vector<Formula>);
};

namespace detail {
struct FormulaNode {
  Connective kind;
  Player agent = 0;
  std::vector<Formula> operands;
};
struct AchNode : FormulaNode {
  Achievable ach;
};
struct GeqNode : FormulaNode {
  Comparison geq;
};
}  // namespace detail

inline Connective Formula::kind() const { return node_->kind; }
inline const Achievable& Formula::achievable() const { return static_cast<const detail::AchNode&>(*node_).ach; }
inline const Comparison& Formula::comparison() const { return static_cast<const detail::GeqNode&>(*node_).geq; }
inline const std::vector<Formula>& Formula::operands() const { return node_->operands; }
inline Player Formula::agent() const { return node_->agent; }

inline int compare(const Rational& a, const Rational& b) {
  if (a.denominator() == b.denominator()) {
    return a.numerator() < b.numerator() ? -1 : (a.numerator() > b.numerator() ? 1 : 0);
  }
  return a < b ? -1 : (b < a ? 1 : 0);
}

inline int compare(const Point& a, const Point& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k)
    if (int c = compare(a[k], b[k])) return c;
  return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

inline int compare(const Formula& a, const Formula& b) {
  if (a.identity() == b.identity()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Connective::Ach: {
      const auto& x = a.achievable();
      const auto& y = b.achievable();
      if (int c = compare(x.coalition, y.coalition)) return c;
      return compare(x.payoff, y.payoff);
    }
    case Connective::Geq: {
      const auto& x = a.comparison();
      const auto& y = b.comparison();
      if (int c = compare(x.lhs_coalition, y.lhs_coalition)) return c;
      if (int c = compare(x.lhs, y.lhs)) return c;
      if (int c = compare(x.scope, y.scope)) return c;
      if (int c = compare(x.rhs_coalition, y.rhs_coalition)) return c;
      return compare(x.rhs, y.rhs);
    }
    case Connective::Bel:
      if (a.agent() != b.agent()) return a.agent() < b.agent() ? -1 : 1;
      [[fallthrough]];
    default: {
      const auto& xs = a.operands();
      const auto& ys = b.operands();
      std::size_t n = std::min(xs.size(), ys.size());
      for (std::size_t k = 0; k < n; ++k)
        if (int c = compare(xs[k], ys[k])) return c;
      return xs.size() == ys.size() ? 0 : (xs.size() < ys.size() ? -1 : 1);
    }
  }
}

inline bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

inline Formula ach(Point payoff, Coalition s) {
  if (s.empty()) throw InvalidInput("achievability atom needs a nonempty coalition");
  auto node = std::make_shared<detail::AchNode>();
  node->kind = Connective::Ach;
  node->ach = Achievable{std::move(payoff), s};
  return Formula(std::move(node));
}

inline Formula geq(Point y, Coalition t, Coalition s, Point x, Coalition u) {
  if (s.empty()) throw InvalidInput("comparison atom needs a nonempty scope");
  auto node = std::make_shared<detail::GeqNode>();
  node->kind = Connective::Geq;
  node->geq = Comparison{std::move(y), t, s, std::move(x), u};
  return Formula(std::move(node));
}

inline Formula negation(Formula f) {
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = Connective::Not;
  node->operands.push_back(std::move(f));
  return Formula(std::move(node));
}

inline Formula implies(Formula a, Formula b) {
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = Connective::Implies;
  node->operands.push_back(std::move(a));
  node->operands.push_back(std::move(b));
  return Formula(std::move(node));
}

inline Formula belief(Player i, Formula f) {
  if (i < 1) throw InvalidInput("belief operator needs a player id >= 1");
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = Connective::Bel;
  node->agent = i;
  node->operands.push_back(std::move(f));
  return Formula(std::move(node));
}

// And/Or members are kept sorted and duplicate-free.
inline Formula make_junction(Connective kind, std::vector<Formula> members) {
  if (members.empty()) throw InvalidInput("conjunction/disjunction needs at least one member");
  if (!std::is_sorted(members.begin(), members.end())) std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = kind;
  node->operands = std::move(members);
  return Formula(std::move(node));
}

inline Formula conj(std::vector<Formula> members) { return make_junction(Connective::And, std::move(members)); }
inline Formula disj(std::vector<Formula> members) { return make_junction(Connective::Or, std::move(members)); }

// y^T >_S x^U abbreviates  y^T >=_S x^U  and  not (x^U >=_S y^T).
inline Formula strictly_greater(const Point& y, Coalition t, Coalition s, const Point& x, Coalition u) {
  return conj({geq(y, t, s, x, u), negation(geq(x, u, s, y, t))});
}

// Reads back the strict abbreviation, returning its left-to-right comparison.
inline std::optional<Comparison> read_strict(const Formula& f) {
  if (f.kind() != Connective::And || f.operands().size() != 2) return std::nullopt;
  const Formula& a = f.operands()[0];
  const Formula& b = f.operands()[1];
  if (a.kind() != Connective::Geq || b.kind() != Connective::Not) return std::nullopt;
  const Formula& inner = b.operand();
  if (inner.kind() != Connective::Geq) return std::nullopt;
  const Comparison& c = a.comparison();
  const Comparison& d = inner.comparison();
  if (c.scope != d.scope || c.lhs_coalition != d.rhs_coalition || c.rhs_coalition != d.lhs_coalition ||
      compare(c.lhs, d.rhs) != 0 || compare(c.rhs, d.lhs) != 0)
    return std::nullopt;
  return c;
}

inline bool has_belief(const Formula& f) {
  if (f.kind() == Connective::Bel) return true;
  if (f.is_atom()) return false;
  return std::any_of(f.operands().begin(), f.operands().end(), [](const Formula& g) { return has_belief(g); });
}

inline std::string to_string(const Formula& f) {
  auto sup = [](Coalition c) { return "^{" + to_key(c) + "}"; };
  switch (f.kind()) {
    case Connective::Ach:
      return to_string(f.achievable().payoff) + sup(f.achievable().coalition);
    case Connective::Geq: {
      const auto& c = f.comparison();
      return to_string(c.lhs) + sup(c.lhs_coalition) + " >=_{" + to_key(c.scope) + "} " + to_string(c.rhs) +
             sup(c.rhs_coalition);
    }
    case Connective::Not:
      return "~" + to_string(f.operand());
    case Connective::Implies:
      return "(" + to_string(f.operands()[0]) + " -> " + to_string(f.operands()[1]) + ")";
    case Connective::Bel:
      return "B" + std::to_string(f.agent()) + "(" + to_string(f.operand()) + ")";
    case Connective::And:
    case Connective::Or: {
      const char* sep = f.kind() == Connective::And ? " & " : " | ";
      std::string out = "(";
      for (std::size_t k = 0; k < f.operands().size(); ++k) {
        if (k) out += sep;
        out += to_string(f.operands()[k]);
      }
      return out + ")";
    }
  }
  return "?";
}

}  // namespace epicore
