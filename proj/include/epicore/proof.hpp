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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epicore/error.hpp"
#include "epicore/formula.hpp"
#include "epicore/sequent.hpp"

namespace epicore {

// Supplies the numeric facts behind the non-logical axioms: grid payoffs for
// TU games, utility levels for exchange economies.
class ComparisonOracle {
 public:
  virtual ~ComparisonOracle() = default;
  // p is a well-formed At1 payoff vector.
  virtual bool admits(const Point& p) const = 0;
  // Every member of s names a slot of the payoff vectors.
  virtual bool admits_scope(Coalition s) const = 0;
  // Slot i of y is weakly preferred to slot i of x.
  virtual bool slot_geq(const Point& y, const Point& x, Player i) const = 0;
};

enum class Rule {
  LogicalAxiom,
  NonLogicalAxiom,
  Th,
  Cut,
  NotLeft,
  NotRight,
  ImpLeft,
  ImpRight,
  AndLeft,
  AndRight,
  OrLeft,
  OrRight,
  EpistemicDist,
};

inline constexpr std::array<std::pair<Rule, std::string_view>, 13> kRuleNames{{
    {Rule::LogicalAxiom, "LogicalAxiom"},
    {Rule::NonLogicalAxiom, "NonLogicalAxiom"},
    {Rule::Th, "Th"},
    {Rule::Cut, "Cut"},
    {Rule::NotLeft, "NotLeft"},
    {Rule::NotRight, "NotRight"},
    {Rule::ImpLeft, "ImpLeft"},
    {Rule::ImpRight, "ImpRight"},
    {Rule::AndLeft, "AndLeft"},
    {Rule::AndRight, "AndRight"},
    {Rule::OrLeft, "OrLeft"},
    {Rule::OrRight, "OrRight"},
    {Rule::EpistemicDist, "EpistemicDist"},
}};

inline std::string_view to_string(Rule r) {
  for (auto [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

inline Rule parse_rule(std::string_view name) {
  for (auto [rule, n] : kRuleNames)
    if (n == name) return rule;
  throw InvalidInput("unknown rule tag \"" + std::string(name) + "\"");
}

// principal: the introduced formula (cut formula for Cut).
// side: the chosen member A of Phi for AndLeft and OrRight.
// agent: i for EpistemicDist.
struct RuleMeta {
  std::optional<Formula> principal;
  std::optional<Formula> side;
  std::optional<Player> agent;
  friend bool operator==(const RuleMeta&, const RuleMeta&) = default;
};

struct ProofTree {
  ThoughtSequent sequent;
  Rule rule = Rule::LogicalAxiom;
  RuleMeta meta;
  std::vector<ProofTree> children;
  friend bool operator==(const ProofTree&, const ProofTree&) = default;
};

// f is  y^T >=_S x^U  with the comparison holding on every slot of S, or the
// negation of such an atom with the comparison failing on some slot.
inline bool nonlogical_axiom_formula(const Formula& f, const ComparisonOracle& oracle) {
  bool negated = f.kind() == Connective::Not;
  const Formula& atom = negated ? f.operand() : f;
  if (atom.kind() != Connective::Geq) return false;
  const Comparison& c = atom.comparison();
  if (!oracle.admits(c.lhs) || !oracle.admits(c.rhs)) return false;
  if (c.scope.empty() || c.lhs_coalition.empty() || c.rhs_coalition.empty()) return false;
  if (!oracle.admits_scope(c.scope) || !oracle.admits_scope(c.lhs_coalition) || !oracle.admits_scope(c.rhs_coalition))
    return false;
  bool all_geq = true;
  c.scope.for_each([&](Player i) {
    if (all_geq && !oracle.slot_geq(c.lhs, c.rhs, i)) all_geq = false;
  });
  return negated ? !all_geq : all_geq;
}

inline bool is_nonlogical_axiom(const ThoughtSequent& ts, const ComparisonOracle& oracle) {
  if (!ts.ante.empty() || ts.succ.symbolic() || ts.succ.size() != 1) return false;
  return nonlogical_axiom_formula(ts.succ.members().front(), oracle);
}

namespace detail {

inline std::optional<FormulaSet> join(const FormulaSet& a, const FormulaSet& b) {
  if (a.context() && b.context() && !same_context(a.context(), b.context())) return std::nullopt;
  return a.with(b);
}

// The sets X with X u {f} == s: s itself (when f was already in X) and
// s minus f (when removable).
inline std::vector<FormulaSet> bases(const FormulaSet& s, const Formula& f) {
  std::vector<FormulaSet> out;
  if (!s.contains(f)) return out;
  out.push_back(s);
  if (auto smaller = s.without(f); smaller && !(*smaller == s)) out.push_back(std::move(*smaller));
  return out;
}

// target == X u {add} for X in {base, base minus removable}.
inline bool edit_either(const FormulaSet& base, const Formula* add, const Formula& removable,
                        const FormulaSet& target) {
  return base.edit_equals(add, nullptr, target) || base.edit_equals(add, &removable, target);
}

// Returns an empty string when the instance is valid, otherwise the reason.
template <class PremiseAt>
std::string instance_error(const ThoughtSequent& c, std::size_t count, PremiseAt premise, Rule rule,
                           const RuleMeta& meta, const ComparisonOracle* oracle) {
  auto arity = [&](std::size_t want) -> std::string {
    if (count != want)
      return std::string(to_string(rule)) + " expects " + std::to_string(want) + " premise(s), got " +
             std::to_string(count);
    return {};
  };
  auto need_principal = [&](Connective kind) -> const Formula* {
    if (!meta.principal || meta.principal->kind() != kind) return nullptr;
    return &*meta.principal;
  };
  if (rule != Rule::EpistemicDist) {
    for (std::size_t k = 0; k < count; ++k)
      if (premise(k).prefix != c.prefix) return "premise " + std::to_string(k) + " has a different prefix";
  }

  switch (rule) {
    case Rule::LogicalAxiom: {
      if (auto e = arity(0); !e.empty()) return e;
      if (c.ante.symbolic() || c.succ.symbolic() || c.ante.size() != 1 || !(c.ante == c.succ))
        return "not of the form B_e[A -> A]";
      return {};
    }
    case Rule::NonLogicalAxiom: {
      if (auto e = arity(0); !e.empty()) return e;
      if (!oracle) return "no comparison oracle supplied";
      if (!is_nonlogical_axiom(c, *oracle)) return "not a non-logical axiom";
      return {};
    }
    case Rule::Th: {
      if (auto e = arity(1); !e.empty()) return e;
      const auto& p = premise(0);
      if (!p.ante.subset_of(c.ante)) return "antecedent of premise not contained in conclusion";
      if (!p.succ.subset_of(c.succ)) return "succedent of premise not contained in conclusion";
      return {};
    }
    case Rule::Cut: {
      if (auto e = arity(2); !e.empty()) return e;
      if (!meta.principal) return "cut formula missing";
      const Formula& a = *meta.principal;
      const auto& left = premise(0);
      const auto& right = premise(1);
      auto thetas = bases(left.succ, a);
      auto deltas = bases(right.ante, a);
      if (thetas.empty()) return "cut formula absent from left succedent";
      if (deltas.empty()) return "cut formula absent from right antecedent";
      bool ante_ok = false;
      for (const auto& d : deltas)
        if (auto u = join(left.ante, d); u && *u == c.ante) ante_ok = true;
      if (!ante_ok) return "conclusion antecedent is not Gamma, Delta";
      bool succ_ok = false;
      for (const auto& t : thetas)
        if (auto u = join(t, right.succ); u && *u == c.succ) succ_ok = true;
      if (!succ_ok) return "conclusion succedent is not Theta, Lambda";
      return {};
    }
    case Rule::NotLeft: {
      if (auto e = arity(1); !e.empty()) return e;
      const Formula* na = need_principal(Connective::Not);
      if (!na) return "principal must be a negation";
      const auto& p = premise(0);
      const Formula& a = na->operand();
      if (!p.succ.contains(a)) return "negated formula absent from premise succedent";
      if (!p.ante.edit_equals(na, nullptr, c.ante)) return "conclusion antecedent is not ~A, Gamma";
      if (!edit_either(p.succ, nullptr, a, c.succ)) return "conclusion succedent is not Theta";
      return {};
    }
    case Rule::NotRight: {
      if (auto e = arity(1); !e.empty()) return e;
      const Formula* na = need_principal(Connective::Not);
      if (!na) return "principal must be a negation";
      const auto& p = premise(0);
      const Formula& a = na->operand();
      if (!p.ante.contains(a)) return "negated formula absent from premise antecedent";
      if (!p.succ.edit_equals(na, nullptr, c.succ)) return "conclusion succedent is not Theta, ~A";
      if (!edit_either(p.ante, nullptr, a, c.ante)) return "conclusion antecedent is not Gamma";
      return {};
    }
    case Rule::ImpLeft: {
      if (auto e = arity(2); !e.empty()) return e;
      const Formula* imp = need_principal(Connective::Implies);
      if (!imp) return "principal must be an implication";
      const Formula& a = imp->operands()[0];
      const Formula& b = imp->operands()[1];
      const auto& left = premise(0);
      const auto& right = premise(1);
      const FormulaSet& gamma = left.ante;
      const FormulaSet& theta = right.succ;
      if (!theta.edit_equals(&a, nullptr, left.succ)) return "left premise succedent is not Theta, A";
      if (!gamma.edit_equals(&b, nullptr, right.ante)) return "right premise antecedent is not B, Gamma";
      if (!gamma.edit_equals(imp, nullptr, c.ante)) return "conclusion antecedent is not A>B, Gamma";
      if (!(theta == c.succ)) return "conclusion succedent is not Theta";
      return {};
    }
    case Rule::ImpRight: {
      if (auto e = arity(1); !e.empty()) return e;
      const Formula* imp = need_principal(Connective::Implies);
      if (!imp) return "principal must be an implication";
      const auto& p = premise(0);
      const Formula& a = imp->operands()[0];
      const Formula& b = imp->operands()[1];
      if (!p.ante.contains(a) || !p.succ.contains(b)) return "premise is not A, Gamma -> Theta, B";
      if (!edit_either(p.ante, nullptr, a, c.ante)) return "conclusion antecedent is not Gamma";
      if (!edit_either(p.succ, imp, b, c.succ)) return "conclusion succedent is not Theta, A>B";
      return {};
    }
    case Rule::AndLeft: {
      if (auto e = arity(1); !e.empty()) return e;
      const Formula* all = need_principal(Connective::And);
      if (!all) return "principal must be a conjunction";
      if (!meta.side) return "chosen conjunct missing";
      const Formula& a = *meta.side;
      if (!std::binary_search(all->operands().begin(), all->operands().end(), a))
        return "chosen formula is not a conjunct";
      const auto& p = premise(0);
      if (!p.ante.contains(a)) return "chosen conjunct absent from premise antecedent";
      if (!(p.succ == c.succ)) return "succedent changed";
      if (!edit_either(p.ante, all, a, c.ante)) return "conclusion antecedent is not /\\Phi, Gamma";
      return {};
    }
    case Rule::AndRight: {
      const Formula* all = need_principal(Connective::And);
      if (!all) return "principal must be a conjunction";
      const auto& phi = all->operands();
      if (auto e = arity(phi.size()); !e.empty()) return e;
      if (!c.succ.contains(*all)) return "conjunction absent from conclusion succedent";
      for (const Formula* drop : {static_cast<const Formula*>(nullptr), all}) {
        bool ok = true;
        for (std::size_t k = 0; k < phi.size() && ok; ++k) {
          const auto& p = premise(k);
          ok = p.ante == c.ante && c.succ.edit_equals(&phi[k], drop, p.succ);
        }
        if (ok) return {};
      }
      return "premises are not Gamma -> Theta, A for each conjunct in order";
    }
    case Rule::OrLeft: {
      const Formula* any = need_principal(Connective::Or);
      if (!any) return "principal must be a disjunction";
      const auto& phi = any->operands();
      if (auto e = arity(phi.size()); !e.empty()) return e;
      if (!c.ante.contains(*any)) return "disjunction absent from conclusion antecedent";
      for (const Formula* drop : {static_cast<const Formula*>(nullptr), any}) {
        bool ok = true;
        for (std::size_t k = 0; k < phi.size() && ok; ++k) {
          const auto& p = premise(k);
          ok = p.succ == c.succ && c.ante.edit_equals(&phi[k], drop, p.ante);
        }
        if (ok) return {};
      }
      return "premises are not A, Gamma -> Theta for each disjunct in order";
    }
    case Rule::OrRight: {
      if (auto e = arity(1); !e.empty()) return e;
      const Formula* any = need_principal(Connective::Or);
      if (!any) return "principal must be a disjunction";
      if (!meta.side) return "chosen disjunct missing";
      const Formula& a = *meta.side;
      if (!std::binary_search(any->operands().begin(), any->operands().end(), a))
        return "chosen formula is not a disjunct";
      const auto& p = premise(0);
      if (!p.succ.contains(a)) return "chosen disjunct absent from premise succedent";
      if (!(p.ante == c.ante)) return "antecedent changed";
      if (!edit_either(p.succ, any, a, c.succ)) return "conclusion succedent is not Theta, \\/Phi";
      return {};
    }
    case Rule::EpistemicDist: {
      if (auto e = arity(1); !e.empty()) return e;
      if (!meta.agent) return "agent missing";
      Player i = *meta.agent;
      const auto& p = premise(0);
      Prefix expect = c.prefix;
      expect.push_back(i);
      if (p.prefix != expect) return "premise prefix is not e o i";
      if (p.ante.symbolic() || p.succ.symbolic() || c.ante.symbolic() || c.succ.symbolic())
        return "distribution needs explicit formula sets";
      if (p.succ.size() > 1) return "distribution needs |Theta| <= 1";
      auto lift = [&](const FormulaSet& s) {
        FormulaSet::Members out;
        for (const auto& f : s.members()) out.push_back(belief(i, f));
        return FormulaSet(std::move(out));
      };
      if (!(lift(p.ante) == c.ante) || !(lift(p.succ) == c.succ))
        return "conclusion is not B_e[B_i(Gamma) -> B_i(Theta)]";
      return {};
    }
  }
  return "unknown rule";
}

}  // namespace detail

inline bool rule_instance_valid(const ThoughtSequent& conclusion, const std::vector<ThoughtSequent>& premises, Rule rule,
                                const RuleMeta& meta, const ComparisonOracle* oracle = nullptr) {
  return detail::instance_error(
             conclusion, premises.size(), [&](std::size_t k) -> const ThoughtSequent& { return premises[k]; }, rule,
             meta, oracle)
      .empty();
}

struct ProofCheck {
  bool ok = true;
  std::vector<std::size_t> path;  // child indices from the root to the failing node
  std::string reason;
  explicit operator bool() const { return ok; }
};

namespace detail {

inline bool check_node(const ProofTree& t, const ComparisonOracle& oracle, std::vector<std::size_t>& path,
                       ProofCheck& out) {
  std::string err = instance_error(
      t.sequent, t.children.size(), [&](std::size_t k) -> const ThoughtSequent& { return t.children[k].sequent; },
      t.rule, t.meta, &oracle);
  if (!err.empty()) {
    out.ok = false;
    out.path = path;
    out.reason = std::string(to_string(t.rule)) + ": " + err + " at " + to_string(t.sequent);
    return false;
  }
  for (std::size_t k = 0; k < t.children.size(); ++k) {
    path.push_back(k);
    if (!check_node(t.children[k], oracle, path, out)) return false;
    path.pop_back();
  }
  return true;
}

}  // namespace detail

// Accepts iff every node is a valid instance of its rule and every leaf is an axiom.
inline ProofCheck check_proof(const ProofTree& tree, const ComparisonOracle& oracle) {
  ProofCheck out;
  std::vector<std::size_t> path;
  detail::check_node(tree, oracle, path, out);
  return out;
}

inline std::size_t proof_size(const ProofTree& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += proof_size(c);
  return n;
}

template <class F>
void for_each_leaf(const ProofTree& t, F&& f) {
  if (t.children.empty()) {
    f(t);
    return;
  }
  for (const auto& c : t.children) for_each_leaf(c, f);
}

}  // namespace epicore
