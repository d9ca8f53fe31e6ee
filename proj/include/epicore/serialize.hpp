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

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "epicore/acceptability.hpp"
#include "epicore/balanced.hpp"
#include "epicore/economy.hpp"
#include "epicore/knowledge.hpp"
#include "epicore/proof.hpp"

namespace epicore {

using Json = nlohmann::ordered_json;

// Parses JSON text, reporting syntax errors with line and column.
inline Json parse_json(const std::string& text, const std::string& origin = "<input>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    auto cut = what.find("syntax error");
    throw InvalidInput(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                       (cut == std::string::npos ? what : what.substr(cut)));
  }
}

namespace detail {

inline const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw InvalidInput(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

inline std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InvalidInput(where + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidInput(where + ": expected a string");
  return j.get<std::string>();
}

}  // namespace detail

// Rationals travel as "p/q" strings; integers are also accepted on input.
inline Json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j, const std::string& where = "rational") {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + ": " + e.what());
    }
  }
  throw InvalidInput(where + ": expected a rational string");
}

inline Json point_json(const Point& p) {
  Json a = Json::array();
  for (const auto& r : p) a.push_back(rational_json(r));
  return a;
}

inline Point point_from_json(const Json& j, const std::string& where = "vector") {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array");
  Point p;
  for (std::size_t k = 0; k < j.size(); ++k) p.push_back(rational_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return p;
}

// {"players": n, "bound": M?, "v": {"1": 10, "1,2": 30, ...}}
inline Json game_json(const TUGame& g) {
  Json values = Json::object();
  for (Coalition s : all_coalitions(g.players())) values[to_key(s)] = g.value(s);
  return Json{{"players", g.players()}, {"bound", g.bound()}, {"v", values}};
}

inline TUGame game_from_json(const Json& j) {
  int n = static_cast<int>(detail::as_int(detail::field(j, "players", "game"), "game.players"));
  if (n < 1 || n > kMaxGamePlayers) throw InvalidInput("game.players: " + std::to_string(n) + " out of range");
  const Json& values = detail::field(j, "v", "game");
  if (!values.is_object()) throw InvalidInput("game.v: expected an object");
  std::map<std::uint64_t, std::int64_t> by_mask;
  for (auto it = values.begin(); it != values.end(); ++it) {
    Coalition s = parse_coalition(it.key(), n);
    if (by_mask.count(s.bits())) throw InvalidInput("duplicate coalition value for key \"" + it.key() + "\"");
    by_mask[s.bits()] = detail::as_int(it.value(), "value for key \"" + it.key() + "\"");
  }
  std::optional<std::int64_t> bound;
  if (j.contains("bound") && !j.at("bound").is_null()) bound = detail::as_int(j.at("bound"), "game.bound");
  return TUGame::from_map(n, by_mask, bound);
}

inline Json family_json(const Family& f) { return to_key(f); }

inline Family family_from_json(const Json& j, int n) {
  if (j.is_string()) return parse_family(j.get<std::string>(), n);
  if (!j.is_array()) throw InvalidInput("family: expected \"1;1,2\" or an array of coalitions");
  Family f;
  for (const auto& c : j) f.push_back(parse_coalition(detail::as_string(c, "coalition"), n));
  return canonical_family(std::move(f));
}

inline Json profile_json(const KnowledgeProfile& p) {
  Json a = Json::array();
  for (const auto& f : p.families()) a.push_back(family_json(f));
  return a;
}

inline KnowledgeProfile profile_from_json(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw InvalidInput("profile: expected an array of " + std::to_string(n) + " families");
  std::vector<Family> fams;
  for (const auto& f : j) fams.push_back(family_from_json(f, n));
  return KnowledgeProfile(std::move(fams));
}

inline Json verdict_json(Player i, const Family& known, const PayoffVector& x, const Verdict& v) {
  Json j{{"player", i},
         {"known", family_json(known)},
         {"x", point_json(x.point())},
         {"verdict", v.acceptable() ? "acceptable" : "unacceptable"},
         {"case", std::string(to_string(v.reason))}};
  if (v.witness)
    j["witness"] = Json{{"coalition", to_key(v.witness->coalition)}, {"payoff", point_json(v.witness->payoff.point())}};
  return j;
}

inline Json report_json(const ProfileReport& r) {
  Json violations = Json::array();
  for (const auto& x : r.violations) violations.push_back(point_json(x.point()));
  return Json{{"game_id", r.game_id},
              {"profile", profile_json(r.profile)},
              {"hypothesis_ok", r.hypothesis_ok},
              {"covering", r.covering},
              {"characterizes_core", r.characterizes_core},
              {"violations", violations}};
}

inline ProfileReport report_from_json(const Json& j, int n) {
  ProfileReport r;
  r.game_id = detail::as_string(detail::field(j, "game_id", "report"), "report.game_id");
  r.profile = profile_from_json(detail::field(j, "profile", "report"), n);
  r.hypothesis_ok = detail::field(j, "hypothesis_ok", "report").get<bool>();
  r.covering = detail::field(j, "covering", "report").get<bool>();
  r.characterizes_core = detail::field(j, "characterizes_core", "report").get<bool>();
  for (const auto& x : detail::field(j, "violations", "report")) r.violations.emplace_back(point_from_json(x));
  return r;
}

inline Json balanced_json(const BalancedFamily& b) {
  Json w = Json::array();
  for (const auto& r : b.weights) w.push_back(rational_json(r));
  return Json{{"family", family_json(b.family)}, {"weights", w}};
}

inline BalancedFamily balanced_from_json(const Json& j, int n) {
  BalancedFamily b;
  b.family = family_from_json(detail::field(j, "family", "balanced"), n);
  for (const auto& w : detail::field(j, "weights", "balanced")) b.weights.push_back(rational_from_json(w, "weight"));
  if (b.weights.size() != b.family.size()) throw InvalidInput("balanced: weight count differs from family size");
  return b;
}

// {"utility": "ces", "rho": "1/2", "grid_denominator": D, "replicas": k}
struct EconomyConfig {
  EdgeworthEconomy economy;
  std::optional<int> replicas;
  friend bool operator==(const EconomyConfig& a, const EconomyConfig& b) {
    return a.economy.grid_denominator == b.economy.grid_denominator && a.economy.utility == b.economy.utility &&
           a.replicas == b.replicas;
  }
};

inline Json economy_json(const EconomyConfig& c) {
  Json j{{"utility", "ces"}, {"rho", "1/2"}, {"grid_denominator", c.economy.grid_denominator}};
  if (c.replicas) j["replicas"] = *c.replicas;
  return j;
}

inline EconomyConfig economy_from_json(const Json& j) {
  EconomyConfig c;
  std::string utility = j.contains("utility") ? detail::as_string(j.at("utility"), "utility") : "ces";
  Rational rho = j.contains("rho") ? rational_from_json(j.at("rho"), "rho") : Rational(1, 2);
  c.economy.utility = parse_utility(utility, rho);
  c.economy.grid_denominator =
      static_cast<int>(detail::as_int(detail::field(j, "grid_denominator", "economy"), "grid_denominator"));
  if (c.economy.grid_denominator < 1) throw InvalidInput("grid_denominator must be positive");
  if (j.contains("replicas")) c.replicas = static_cast<int>(detail::as_int(j.at("replicas"), "replicas"));
  return c;
}

inline Json bundle_json(const Bundle& b) { return Json::array({rational_json(b.good1), rational_json(b.good2)}); }

inline Bundle bundle_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("bundle: expected [good1, good2]");
  return Bundle{rational_from_json(j[0], "good1"), rational_from_json(j[1], "good2")};
}

inline Json allocation_json(const ReplicaEconomy& e, const Allocation& x) {
  Json bundles = Json::array();
  for (const auto& b : x.bundles) bundles.push_back(bundle_json(b));
  Json j{{"bundles", bundles}};
  if (auto p = project(e, x)) j["per_type"] = Json::array({bundle_json(p->first), bundle_json(p->second)});
  return j;
}

inline Allocation allocation_from_json(const Json& j) {
  Allocation x;
  for (const auto& b : detail::field(j, "bundles", "allocation")) x.bundles.push_back(bundle_from_json(b));
  return x;
}

inline std::string decimal(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", boost::rational_cast<double>(r));
  return buf;
}

// Plot-friendly decimals, one row per allocation.
inline std::string allocations_csv(const ReplicaEconomy& e, const std::vector<Allocation>& xs) {
  std::string out;
  for (int p = 0; p < e.participants(); ++p) {
    std::string name = std::to_string(e.type(p)) + "_" + std::to_string(e.copy(p));
    out += (p ? "," : "") + std::string("x") + name + "_good1,x" + name + "_good2";
  }
  out += '\n';
  for (const auto& x : xs) {
    for (std::size_t p = 0; p < x.bundles.size(); ++p)
      out += (p ? "," : "") + decimal(x.bundles[p].good1) + "," + decimal(x.bundles[p].good2);
    out += '\n';
  }
  return out;
}

// ---- proofs ---------------------------------------------------------------

// Which non-logical axioms a proof file relies on.
struct ProofSetting {
  std::optional<TUGame> game;            // grid comparisons of a TU game
  std::optional<EconomyConfig> economy;  // utility comparisons of a replica economy
};

namespace detail {

class FormulaPool {
 public:
  std::size_t add(const Formula& f) {
    auto it = index_.find(f);
    if (it != index_.end()) return it->second;
    Json node;
    switch (f.kind()) {
      case Connective::Ach:
        node = Json{{"op", "ach"}, {"payoff", point_json(f.achievable().payoff)}, {"coalition", to_key(f.achievable().coalition)}};
        break;
      case Connective::Geq: {
        const Comparison& c = f.comparison();
        node = Json{{"op", "geq"},
                    {"lhs", point_json(c.lhs)},
                    {"lhs_coalition", to_key(c.lhs_coalition)},
                    {"scope", to_key(c.scope)},
                    {"rhs", point_json(c.rhs)},
                    {"rhs_coalition", to_key(c.rhs_coalition)}};
        break;
      }
      default: {
        static const std::map<Connective, const char*> names{{Connective::Not, "not"}, {Connective::Implies, "implies"},
                                                             {Connective::And, "and"}, {Connective::Or, "or"},
                                                             {Connective::Bel, "bel"}};
        Json args = Json::array();
        for (const auto& g : f.operands()) args.push_back(add(g));
        node = Json{{"op", names.at(f.kind())}, {"args", args}};
        if (f.kind() == Connective::Bel) node["agent"] = f.agent();
      }
    }
    nodes_.push_back(std::move(node));
    return index_[f] = nodes_.size() - 1;
  }
  Json take() { return std::move(nodes_); }

 private:
  std::map<Formula, std::size_t> index_;
  Json nodes_ = Json::array();
};

class ContextTable {
 public:
  std::optional<std::size_t> add(const ContextPtr& c) {
    if (!c) return std::nullopt;
    auto it = index_.find(c->key());
    if (it != index_.end()) return it->second;
    auto k = dynamic_cast<const KnowledgeContext*>(c.get());
    if (!k) throw InvalidInput("cannot serialize a knowledge context of unknown kind");
    nodes_.push_back(Json{{"kind", "gamma"}, {"known", family_json(k->known())}});
    return index_[c->key()] = nodes_.size() - 1;
  }
  Json take() { return std::move(nodes_); }

 private:
  std::map<std::string, std::size_t> index_;
  Json nodes_ = Json::array();
};

// Members go under `name`; a symbolic part is referenced as `name`_context.
inline void put_set(Json& seq, const std::string& name, const FormulaSet& s, FormulaPool& pool, ContextTable& contexts) {
  Json members = Json::array();
  for (const auto& f : s.members()) members.push_back(pool.add(f));
  seq[name] = std::move(members);
  if (auto c = contexts.add(s.context())) seq[name + "_context"] = *c;
}

inline Json tree_json(const ProofTree& t, FormulaPool& pool, ContextTable& contexts) {
  Json prefix = Json::array();
  for (Player p : t.sequent.prefix) prefix.push_back(p);
  Json seq{{"prefix", prefix}};
  put_set(seq, "ante", t.sequent.ante, pool, contexts);
  put_set(seq, "succ", t.sequent.succ, pool, contexts);
  Json meta = Json::object();
  if (t.meta.principal) meta["principal"] = pool.add(*t.meta.principal);
  if (t.meta.side) meta["side"] = pool.add(*t.meta.side);
  if (t.meta.agent) meta["agent"] = *t.meta.agent;
  Json children = Json::array();
  for (const auto& c : t.children) children.push_back(tree_json(c, pool, contexts));
  return Json{{"sequent", std::move(seq)}, {"rule", std::string(to_string(t.rule))}, {"meta", std::move(meta)},
              {"children", std::move(children)}};
}

}  // namespace detail

inline Json proof_json(const ProofTree& tree, const ProofSetting& setting) {
  detail::FormulaPool pool;
  detail::ContextTable contexts;
  Json root = detail::tree_json(tree, pool, contexts);
  Json j{{"format", "epicore-proof/1"}};
  if (setting.game) j["game"] = game_json(*setting.game);
  if (setting.economy) j["economy"] = economy_json(*setting.economy);
  j["contexts"] = contexts.take();
  j["formulas"] = pool.take();
  j["root"] = std::move(root);
  return j;
}

struct ParsedProof {
  ProofSetting setting;
  ProofTree tree;
};

namespace detail {

class ProofReader {
 public:
  explicit ProofReader(const Json& j) : j_(j) {
    if (!j.contains("format") || j.at("format") != "epicore-proof/1") throw InvalidInput("proof: unknown or missing format tag");
    if (j.contains("game")) setting_.game = game_from_json(j.at("game"));
    if (j.contains("economy")) setting_.economy = economy_from_json(j.at("economy"));
    if (setting_.game) game_ = std::make_shared<TUGame>(*setting_.game);
    slots_ = game_ ? game_->players() : setting_.economy && setting_.economy->replicas ? 2 * *setting_.economy->replicas : kMaxPlayers;
    const Json& fs = field(j, "formulas", "proof");
    for (std::size_t k = 0; k < fs.size(); ++k) formulas_.push_back(formula(fs[k], k));
    for (const auto& c : field(j, "contexts", "proof")) {
      if (!game_) throw InvalidInput("proof: knowledge contexts need a game");
      if (as_string(field(c, "kind", "context"), "context.kind") != "gamma") throw InvalidInput("proof: unknown context kind");
      contexts_.push_back(std::make_shared<KnowledgeContext>(game_, family_from_json(field(c, "known", "context"), slots_)));
    }
  }

  ParsedProof read() { return ParsedProof{setting_, tree(field(j_, "root", "proof"))}; }

 private:
  const Formula& ref(const Json& idx, std::size_t limit) const {
    if (!idx.is_number_unsigned() || idx.get<std::size_t>() >= limit) throw InvalidInput("proof: bad formula reference");
    return formulas_[idx.get<std::size_t>()];
  }

  Formula formula(const Json& node, std::size_t self) {
    std::string op = as_string(field(node, "op", "formula"), "formula.op");
    if (op == "ach")
      return ach(point_from_json(field(node, "payoff", "formula")), parse_coalition(as_string(field(node, "coalition", "formula"), "coalition"), slots_));
    if (op == "geq") {
      auto c = [&](const char* name) { return parse_coalition(as_string(field(node, name, "formula"), name), slots_); };
      return geq(point_from_json(field(node, "lhs", "formula")), c("lhs_coalition"), c("scope"),
                 point_from_json(field(node, "rhs", "formula")), c("rhs_coalition"));
    }
    std::vector<Formula> args;
    for (const auto& a : field(node, "args", "formula")) args.push_back(ref(a, self));
    auto arity = [&](std::size_t n) {
      if (args.size() != n) throw InvalidInput("proof: operator \"" + op + "\" has the wrong number of arguments");
    };
    if (op == "not") return arity(1), negation(args[0]);
    if (op == "implies") return arity(2), implies(args[0], args[1]);
    if (op == "bel") return arity(1), belief(static_cast<Player>(as_int(field(node, "agent", "formula"), "agent")), args[0]);
    if (op == "and") return conj(std::move(args));
    if (op == "or") return disj(std::move(args));
    throw InvalidInput("proof: unknown operator \"" + op + "\"");
  }

  FormulaSet set(const Json& seq, const std::string& name) const {
    std::vector<Formula> members;
    for (const auto& m : field(seq, name.c_str(), "sequent")) members.push_back(ref(m, formulas_.size()));
    ContextPtr context;
    if (auto key = name + "_context"; seq.contains(key)) {
      const Json& c = seq.at(key);
      if (!c.is_number_unsigned() || c.get<std::size_t>() >= contexts_.size()) throw InvalidInput("proof: bad context reference");
      context = contexts_[c.get<std::size_t>()];
    }
    return FormulaSet(members, context);
  }

  ProofTree tree(const Json& n) const {
    ProofTree t;
    t.rule = parse_rule(as_string(field(n, "rule", "node"), "rule"));
    const Json& seq = field(n, "sequent", "node");
    for (const auto& p : field(seq, "prefix", "sequent")) t.sequent.prefix.push_back(static_cast<Player>(as_int(p, "prefix")));
    t.sequent.ante = set(seq, "ante");
    t.sequent.succ = set(seq, "succ");
    if (n.contains("meta")) {
      const Json& m = n.at("meta");
      if (m.contains("principal")) t.meta.principal = ref(m.at("principal"), formulas_.size());
      if (m.contains("side")) t.meta.side = ref(m.at("side"), formulas_.size());
      if (m.contains("agent")) t.meta.agent = static_cast<Player>(as_int(m.at("agent"), "agent"));
    }
    for (const auto& c : field(n, "children", "node")) t.children.push_back(tree(c));
    return t;
  }

  const Json& j_;
  ProofSetting setting_;
  std::shared_ptr<const TUGame> game_;
  int slots_ = kMaxPlayers;
  std::vector<Formula> formulas_;
  std::vector<ContextPtr> contexts_;
};

}  // namespace detail

inline ParsedProof proof_from_json(const Json& j) { return detail::ProofReader(j).read(); }

// The oracle matching a proof setting; the economy needs its replica count.
struct SettingOracle {
  std::unique_ptr<ReplicaEconomy> economy;
  std::unique_ptr<ComparisonOracle> oracle;
};

inline SettingOracle oracle_for(const ProofSetting& s) {
  SettingOracle out;
  if (s.game) {
    out.oracle = std::make_unique<GridOracle>(*s.game);
  } else if (s.economy && s.economy->replicas) {
    out.economy = std::make_unique<ReplicaEconomy>(s.economy->economy, *s.economy->replicas);
    out.oracle = std::make_unique<UtilityOracle>(*out.economy);
  } else {
    throw InvalidInput("proof names neither a game nor an economy with replicas");
  }
  return out;
}

}  // namespace epicore
