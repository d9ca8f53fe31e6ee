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

#include <optional>
#include <utility>
#include <vector>

#include "epicore/proof.hpp"

namespace epicore {

// Builds proofs of B_e[K -> C] and B_e[K -> ~C] for acceptability criteria
// C = ~\/Phi, where K is a knowledge set and the atoms of Phi are settled
// either by K or by non-logical axioms.
class ProofEmitter {
 public:
  ProofEmitter(Prefix prefix, FormulaSet knowledge, const ComparisonOracle& oracle)
      : prefix_(std::move(prefix)), knowledge_(std::move(knowledge)), oracle_(oracle) {}

  // Root B_e[K -> criterion]; criterion must be a negation.
  std::optional<ProofTree> prove_acceptable(const Formula& criterion) const {
    if (criterion.kind() != Connective::Not) return std::nullopt;
    const Formula& body = criterion.operand();
    std::optional<ProofTree> root(std::in_place);
    ProofTree& refuted = add(*root);
    if (body.kind() == Connective::Or) {
      refuted.children.reserve(body.operands().size());
      for (const Formula& a : body.operands()) {
        ProofTree& branch = add(refuted);
        if (!refute_weakened(a, branch)) return std::nullopt;
      }
      set(refuted, knowledge_.with(body), FormulaSet(), Rule::OrLeft, {body, std::nullopt, std::nullopt});
    } else if (!refute_weakened(body, refuted)) {
      return std::nullopt;
    }
    set(*root, knowledge_, FormulaSet{criterion}, Rule::NotRight, {criterion, std::nullopt, std::nullopt});
    return root;
  }

  // Root B_e[K -> ~criterion]; `hint` is the disjunct tried first.
  std::optional<ProofTree> prove_unacceptable(const Formula& criterion,
                                              const std::optional<Formula>& hint = std::nullopt) const {
    if (criterion.kind() != Connective::Not) return std::nullopt;
    const Formula& body = criterion.operand();
    std::optional<ProofTree> root(std::in_place);
    ProofTree& left = add(*root);
    ProofTree& proved = add(left);
    bool ok = false;
    if (body.kind() == Connective::Or) {
      const auto& phi = body.operands();
      auto attempt = [&](const Formula& a) {
        proved.children.clear();
        if (!prove_weakened(a, add(proved))) return false;
        set(proved, knowledge_, FormulaSet{body}, Rule::OrRight, {body, a, std::nullopt});
        return true;
      };
      if (hint && std::binary_search(phi.begin(), phi.end(), *hint)) ok = attempt(*hint);
      for (std::size_t k = 0; !ok && k < phi.size(); ++k) ok = attempt(phi[k]);
    } else {
      ok = prove_weakened(body, proved);
    }
    if (!ok) return std::nullopt;
    set(left, knowledge_.with(criterion), FormulaSet(), Rule::NotLeft, {criterion, std::nullopt, std::nullopt});
    Formula twice = negation(criterion);
    set(*root, knowledge_, FormulaSet{twice}, Rule::NotRight, {twice, std::nullopt, std::nullopt});
    return root;
  }

 private:
  static ProofTree& add(ProofTree& parent) { return parent.children.emplace_back(); }

  void set(ProofTree& t, FormulaSet ante, FormulaSet succ, Rule rule, RuleMeta meta = {}) const {
    t.sequent.prefix = prefix_;
    t.sequent.ante = std::move(ante);
    t.sequent.succ = std::move(succ);
    t.rule = rule;
    t.meta = std::move(meta);
  }

  // Turns t (already holding a derivation) into Th over it with the given
  // sequent, unless the sequent already matches.
  void weaken(ProofTree& t, FormulaSet ante, FormulaSet succ) const {
    if (t.sequent.ante == ante && t.sequent.succ == succ) return;
    ProofTree inner = std::move(t);
    t = ProofTree{};
    t.children.push_back(std::move(inner));
    set(t, std::move(ante), std::move(succ), Rule::Th);
  }

  // [A, K -> ] into t.
  bool refute_weakened(const Formula& a, ProofTree& t) const {
    ProofTree& d = add(t);
    FormulaSet used;
    if (!refute(a, d, used)) return false;
    if (d.sequent.ante == knowledge_.with(a) && d.sequent.succ.empty()) {
      ProofTree inner = std::move(d);
      t = std::move(inner);
      return true;
    }
    set(t, knowledge_.with(a), FormulaSet(), Rule::Th);
    return true;
  }

  // [K -> A] into t.
  bool prove_weakened(const Formula& a, ProofTree& t) const {
    ProofTree& d = add(t);
    FormulaSet used;
    if (!prove(a, d, used)) return false;
    if (d.sequent.ante == knowledge_ && d.sequent.succ == FormulaSet{a}) {
      ProofTree inner = std::move(d);
      t = std::move(inner);
      return true;
    }
    set(t, knowledge_, FormulaSet{a}, Rule::Th);
    return true;
  }

  // Fills t with a proof of [used -> m], used being a subset of K.
  bool prove(const Formula& m, ProofTree& t, FormulaSet& used) const {
    if (knowledge_.contains(m)) {
      set(t, FormulaSet{m}, FormulaSet{m}, Rule::LogicalAxiom);
      used = FormulaSet{m};
      return true;
    }
    switch (m.kind()) {
      case Connective::Geq:
        if (!nonlogical_axiom_formula(m, oracle_)) return false;
        set(t, FormulaSet(), FormulaSet{m}, Rule::NonLogicalAxiom);
        used = FormulaSet();
        return true;
      case Connective::Not: {
        const Formula& g = m.operand();
        if (g.kind() == Connective::Geq) {
          if (!nonlogical_axiom_formula(m, oracle_)) return false;
          set(t, FormulaSet(), FormulaSet{m}, Rule::NonLogicalAxiom);
          used = FormulaSet();
          return true;
        }
        if (!refute(g, add(t), used)) return false;
        set(t, used, FormulaSet{m}, Rule::NotRight, {m, std::nullopt, std::nullopt});
        return true;
      }
      case Connective::And: {
        const auto& phi = m.operands();
        t.children.reserve(phi.size());
        std::vector<FormulaSet> parts(phi.size());
        used = FormulaSet();
        for (std::size_t k = 0; k < phi.size(); ++k) {
          if (!prove(phi[k], add(t), parts[k])) return false;
          used = used.with(parts[k]);
        }
        for (std::size_t k = 0; k < phi.size(); ++k) weaken(t.children[k], used, FormulaSet{phi[k]});
        set(t, used, FormulaSet{m}, Rule::AndRight, {m, std::nullopt, std::nullopt});
        return true;
      }
      case Connective::Or:
        for (const Formula& a : m.operands()) {
          t.children.clear();
          if (prove(a, add(t), used)) {
            set(t, used, FormulaSet{m}, Rule::OrRight, {m, a, std::nullopt});
            return true;
          }
        }
        return false;
      case Connective::Implies: {
        const Formula& a = m.operands()[0];
        const Formula& b = m.operands()[1];
        ProofTree& d = add(t);
        if (!prove(b, d, used)) {
          d = ProofTree{};
          if (!refute(a, d, used)) return false;
        }
        weaken(d, used.with(a), FormulaSet{b});
        set(t, used, FormulaSet{m}, Rule::ImpRight, {m, std::nullopt, std::nullopt});
        return true;
      }
      default:
        return false;
    }
  }

  // Fills t with a proof of [m, used -> ], used being a subset of K.
  bool refute(const Formula& m, ProofTree& t, FormulaSet& used) const {
    if (m.kind() != Connective::Not && knowledge_.contains_negation_of(m)) {
      Formula nm = negation(m);
      set(add(t), FormulaSet{m}, FormulaSet{m}, Rule::LogicalAxiom);
      set(t, FormulaSet{m, nm}, FormulaSet(), Rule::NotLeft, {nm, std::nullopt, std::nullopt});
      used = FormulaSet{nm};
      return true;
    }
    switch (m.kind()) {
      case Connective::Geq: {
        Formula nm = negation(m);
        if (!nonlogical_axiom_formula(nm, oracle_)) return false;
        t.children.reserve(2);
        set(add(t), FormulaSet(), FormulaSet{nm}, Rule::NonLogicalAxiom);
        ProofTree& right = add(t);
        set(add(right), FormulaSet{m}, FormulaSet{m}, Rule::LogicalAxiom);
        set(right, FormulaSet{m, nm}, FormulaSet(), Rule::NotLeft, {nm, std::nullopt, std::nullopt});
        set(t, FormulaSet{m}, FormulaSet(), Rule::Cut, {nm, std::nullopt, std::nullopt});
        used = FormulaSet();
        return true;
      }
      case Connective::Not:
        if (!prove(m.operand(), add(t), used)) return false;
        set(t, used.with(m), FormulaSet(), Rule::NotLeft, {m, std::nullopt, std::nullopt});
        return true;
      case Connective::And:
        for (const Formula& a : m.operands()) {
          t.children.clear();
          if (refute(a, add(t), used)) {
            set(t, used.with(m), FormulaSet(), Rule::AndLeft, {m, a, std::nullopt});
            return true;
          }
        }
        return false;
      case Connective::Or: {
        const auto& phi = m.operands();
        t.children.reserve(phi.size());
        std::vector<FormulaSet> parts(phi.size());
        used = FormulaSet();
        for (std::size_t k = 0; k < phi.size(); ++k) {
          if (!refute(phi[k], add(t), parts[k])) return false;
          used = used.with(parts[k]);
        }
        for (std::size_t k = 0; k < phi.size(); ++k) weaken(t.children[k], used.with(phi[k]), FormulaSet());
        set(t, used.with(m), FormulaSet(), Rule::OrLeft, {m, std::nullopt, std::nullopt});
        return true;
      }
      case Connective::Implies: {
        const Formula& a = m.operands()[0];
        const Formula& b = m.operands()[1];
        t.children.reserve(2);
        FormulaSet ua, ub;
        ProofTree& left = add(t);
        if (!prove(a, left, ua)) return false;
        ProofTree& right = add(t);
        if (!refute(b, right, ub)) return false;
        used = ua.with(ub);
        weaken(t.children[0], used, FormulaSet{a});
        weaken(t.children[1], used.with(b), FormulaSet());
        set(t, used.with(m), FormulaSet(), Rule::ImpLeft, {m, std::nullopt, std::nullopt});
        return true;
      }
      default:
        return false;
    }
  }

  Prefix prefix_;
  FormulaSet knowledge_;
  const ComparisonOracle& oracle_;
};

}  // namespace epicore
