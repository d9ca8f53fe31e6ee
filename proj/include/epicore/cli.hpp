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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epicore/acceptability.hpp"
#include "epicore/balanced.hpp"
#include "epicore/economy.hpp"
#include "epicore/knowledge.hpp"
#include "epicore/parallel.hpp"
#include "epicore/serialize.hpp"

namespace epicore {

enum ExitCode { kOk = 0, kInputError = 1, kVerificationFailure = 2, kUnsupportedSize = 3 };

struct RunConfig {
  std::string command;
  std::string input;     // game, economy or proof file
  std::string output;    // optional JSON artifact
  std::string csv;       // replica: optional CSV of the grid core
  int players = 0;       // balanced
  Player player = 1;     // accept, prove
  std::string known;     // accept, prove: "1;1,2"
  std::string payoff;    // accept, prove: "9,21"
  std::string profiles = "covering";
  int replicas = 0;      // replica: overrides the file
  int refinement = 2;
  bool exhaustive = false;
  std::vector<int> withhold;
  bool skip_core = false;
  unsigned threads = 1;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open \"" + path + "\"");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write \"" + path + "\"");
  out << text;
}

inline void emit(const RunConfig& c, const Json& j, bool compact = false) {
  if (!c.output.empty()) write_file(c.output, j.dump(compact ? -1 : 2) + "\n");
}

inline TUGame load_game(const std::string& path) {
  Json j = parse_json(read_file(path), path);
  try {
    return game_from_json(j);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

inline PayoffVector payoff_arg(const TUGame& g, const std::string& text) {
  PayoffVector x(parse_point(text));
  require_grid(g, x);
  return x;
}

inline int core(const RunConfig& c, std::ostream& out) {
  TUGame g = load_game(c.input);
  auto xs = enumerate_integer_core(g);
  Json arr = Json::array();
  for (const auto& x : xs) {
    out << to_string(x) << "\n";
    arr.push_back(point_json(x.point()));
  }
  emit(c, Json{{"game", game_json(g)}, {"core", arr}});
  return kOk;
}

inline int accept(const RunConfig& c, std::ostream& out) {
  TUGame g = load_game(c.input);
  Family known = parse_family(c.known, g.players());
  PayoffVector x = payoff_arg(g, c.payoff);
  Verdict v = decide(g, c.player, known, x);
  out << "player " << c.player << " knowing {" << to_key(known) << "}: " << (v.acceptable() ? "acceptable" : "unacceptable")
      << " (" << to_string(v.reason) << ")";
  if (v.witness) out << " witness {" << to_key(v.witness->coalition) << "} " << to_string(v.witness->payoff);
  out << "\n";
  emit(c, verdict_json(c.player, known, x, v));
  return kOk;
}

inline int prove(const RunConfig& c, std::ostream& out) {
  if (c.output.empty()) throw InvalidInput("prove needs an output file (-o)");
  TUGame g = load_game(c.input);
  Family known = parse_family(c.known, g.players());
  PayoffVector x = payoff_arg(g, c.payoff);
  Verdict v = decide(g, c.player, known, x);
  ProofTree tree = emit_proof(g, c.player, known, x);
  emit(c, proof_json(tree, ProofSetting{g, std::nullopt}), true);
  // Re-read what was written and check it from scratch.
  ParsedProof back = proof_from_json(parse_json(read_file(c.output), c.output));
  auto oracle = oracle_for(back.setting);
  ProofCheck check = check_proof(back.tree, *oracle.oracle);
  if (!check) throw VerificationFailure("written proof does not check: " + check.reason);
  out << (v.acceptable() ? "acceptable" : "unacceptable") << ": proof with " << proof_size(back.tree)
      << " nodes written to " << c.output << " and checked\n";
  return kOk;
}

inline std::string path_string(const std::vector<std::size_t>& path) {
  std::string s;
  for (auto k : path) s += "/" + std::to_string(k);
  return s.empty() ? "/" : s;
}

inline int check(const RunConfig& c, std::ostream& out) {
  ParsedProof p = proof_from_json(parse_json(read_file(c.input), c.input));
  auto oracle = oracle_for(p.setting);
  ProofCheck r = check_proof(p.tree, *oracle.oracle);
  if (!r) {
    out << "invalid at " << path_string(r.path) << ": " << r.reason << "\n";
    return kVerificationFailure;
  }
  out << "valid: " << proof_size(p.tree) << " nodes, root " << to_string(p.tree.rule) << "\n";
  return kOk;
}

inline std::vector<KnowledgeProfile> load_profiles(const RunConfig& c, int n) {
  if (c.profiles == "covering") return covering_profiles(n);
  if (c.profiles == "all") return all_profiles(n);
  Json j = parse_json(read_file(c.profiles), c.profiles);
  if (!j.is_array()) throw InvalidInput(c.profiles + ": expected an array of profiles");
  std::vector<KnowledgeProfile> out;
  for (const auto& p : j) out.push_back(profile_from_json(p, n));
  return out;
}

inline int verify(const RunConfig& c, std::ostream& out) {
  TUGame g = load_game(c.input);
  auto profiles = load_profiles(c, g.players());
  for (const auto& p : profiles) require_profile(g, p);
  SweepDomain domain(g);
  auto reports = parallel_map(profiles.size(), c.threads, [&](std::size_t k) { return characterizes_core(domain, profiles[k]); });
  Json arr = Json::array();
  std::size_t characterizing = 0, broken = 0;
  for (const auto& r : reports) {
    arr.push_back(report_json(r));
    characterizing += r.characterizes_core;
    // Full coverage with membership-respecting knowledge must characterize the core.
    if (r.covering && r.hypothesis_ok && !r.characterizes_core) ++broken;
  }
  emit(c, arr);
  out << profiles.size() << " profiles, " << characterizing << " characterize the core, " << broken
      << " covering profiles fail\n";
  return broken ? kVerificationFailure : kOk;
}

inline int balanced(const RunConfig& c, std::ostream& out) {
  auto fams = minimal_balanced_families(c.players);
  Json arr = Json::array();
  for (const auto& b : fams) {
    out << "{" << to_key(b.family) << "} weights";
    for (const auto& w : b.weights) out << " " << to_string(w);
    out << "\n";
    arr.push_back(balanced_json(b));
  }
  emit(c, arr);
  return kOk;
}

inline int bs(const RunConfig& c, std::ostream& out) {
  TUGame g = load_game(c.input);
  auto violation = bondareva_shapley_violation(g);
  auto lp = core_point_lp(g);
  out << "Bondareva-Shapley: core " << (violation ? "empty" : "nonempty") << "\n";
  if (violation)
    out << "  family {" << to_key(violation->family) << "} has weighted worth " << to_string(balanced_worth(g, *violation))
        << " > v(N) = " << g.value(g.grand()) << "\n";
  out << "LP oracle: core " << (lp ? "nonempty" : "empty");
  if (lp) out << ", e.g. " << to_string(Point(lp->begin(), lp->end()));
  out << "\n";
  Prop51Report p = prop51_check(g);
  out << "balanced knowledge hypothesis: " << (p.hypothesis ? "holds" : "fails");
  if (p.failing_family) out << " at {" << to_key(*p.failing_family) << "}";
  out << "\n";
  Json j{{"bondareva_shapley_nonempty", !violation}, {"lp_nonempty", lp.has_value()}, {"prop51_hypothesis", p.hypothesis}};
  if (violation) j["violating_family"] = balanced_json(*violation);
  if (lp) j["core_point"] = point_json(Point(lp->begin(), lp->end()));
  emit(c, j);
  if (violation.has_value() == lp.has_value()) throw VerificationFailure("Bondareva-Shapley and the LP oracle disagree");
  if (!p.implication_holds()) throw VerificationFailure("balanced knowledge hypothesis holds but the core is empty");
  return kOk;
}

inline int replica(const RunConfig& c, std::ostream& out) {
  EconomyConfig cfg;
  Json raw = parse_json(read_file(c.input), c.input);
  try {
    cfg = economy_from_json(raw);
  } catch (const InvalidInput& e) {
    throw InvalidInput(c.input + ": " + e.what());
  }
  int k = c.replicas ? c.replicas : cfg.replicas.value_or(1);
  ReplicaEconomy e(cfg.economy, k);
  GridOptions opt;
  opt.refinement = c.refinement;
  opt.mode = c.exhaustive ? CoalitionMode::Exhaustive : CoalitionMode::Effective;
  opt.withheld_groups = c.withhold;

  Json j{{"economy", economy_json(EconomyConfig{cfg.economy, k})}};
  Json eff = Json::array();
  for (const auto& ec : effective_groups(k)) {
    Json names = Json::array();
    ec.members.for_each([&](Player p) { names.push_back(e.name(p - 1)); });
    eff.push_back(Json{{"members", names}, {"group", ec.group}});
  }
  j["effective_coalitions"] = eff;
  out << "effective coalitions: " << eff.size() << "\n";
  if (k >= 2) {
    auto growth = knowledge_growth(k);
    out << "knowledge growth: count " << growth.count << ", average " << to_string(growth.average) << "\n";
    j["knowledge_growth"] = Json{{"count", growth.count}, {"average", rational_json(growth.average)}};
  }
  j["derived_game"] = derived_game_note(cfg.economy);
  if (!c.skip_core) {
    try {
      auto core = grid_core(e, opt);
      Json arr = Json::array();
      for (const auto& x : core) arr.push_back(allocation_json(e, x));
      j["grid_core"] = arr;
      out << "grid core (D=" << e.denominator() << "): " << core.size() << " allocations\n";
      for (const auto& x : core) out << "  " << to_string(e, x) << "\n";
      if (!c.csv.empty()) write_file(c.csv, allocations_csv(e, core));
    } catch (const UnsupportedSize& err) {
      j["grid_core_skipped"] = err.what();
      out << "grid core skipped: " << err.what() << "\n";
    }
  }
  emit(c, j);
  return kOk;
}

}  // namespace cli

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "core") return cli::core(c, out);
    if (c.command == "accept") return cli::accept(c, out);
    if (c.command == "prove") return cli::prove(c, out);
    if (c.command == "check") return cli::check(c, out);
    if (c.command == "verify") return cli::verify(c, out);
    if (c.command == "balanced") return cli::balanced(c, out);
    if (c.command == "bs") return cli::bs(c, out);
    if (c.command == "replica") return cli::replica(c, out);
    throw InvalidInput("unknown command \"" + c.command + "\"");
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedSize& e) {
    err << "unsupported size: " << e.what() << "\n";
    return kUnsupportedSize;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

// Parses the command line and runs it.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Epistemic analysis of the core of cooperative games", "epicore"};
  app.require_subcommand(1);
  app.add_option("--threads", c.threads, "worker threads for sweeps")->check(CLI::Range(1u, 256u));

  auto game_cmd = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("game", c.input, "game JSON file")->required();
    s->add_option("-o,--output", c.output, "write a JSON artifact");
    return s;
  };
  game_cmd("core", "list the integer core");
  for (const char* name : {"accept", "prove"}) {
    auto* s = game_cmd(name, name == std::string("accept") ? "decide acceptability" : "emit and check a proof");
    s->add_option("-i,--player", c.player, "player")->required();
    s->add_option("-K,--known", c.known, "known coalitions, e.g. \"1;1,2\"");
    s->add_option("-x,--payoff", c.payoff, "payoff vector, e.g. 9,21")->required();
  }
  auto* chk = app.add_subcommand("check", "check a proof file");
  chk->add_option("proof", c.input, "proof JSON file")->required();
  game_cmd("verify", "compare unanimous acceptance with the core")
      ->add_option("--profiles", c.profiles, "covering, all, or a JSON file of profiles");
  auto* bal = app.add_subcommand("balanced", "list minimal balanced families");
  bal->add_option("n", c.players, "player count")->required();
  bal->add_option("-o,--output", c.output, "write a JSON artifact");
  game_cmd("bs", "Bondareva-Shapley test with an LP cross-check");
  auto* rep = app.add_subcommand("replica", "replica economy analysis");
  rep->add_option("economy", c.input, "economy JSON file")->required();
  rep->add_option("-k,--replicas", c.replicas, "replica count")->check(CLI::Range(1, 32));
  rep->add_option("-o,--output", c.output, "write a JSON artifact");
  rep->add_option("--csv", c.csv, "write the grid core as CSV");
  rep->add_option("--refinement", c.refinement, "dominator grid refinement")->check(CLI::Range(1, 16));
  rep->add_flag("--exhaustive", c.exhaustive, "use every coalition instead of the effective list");
  rep->add_option("--withhold", c.withhold, "effective groups to leave out (1-4)")->check(CLI::Range(1, 4));
  rep->add_flag("--no-core", c.skip_core, "skip the grid core");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace epicore
