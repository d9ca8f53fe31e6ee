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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "epicore/epicore.hpp"

namespace {

using namespace epicore;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

// Calls f on every game with n players and worths in 0..top.
template <class F>
void for_each_game(int n, int top, F&& f) {
  const std::size_t m = std::size_t{1} << n;
  std::vector<std::int64_t> v(m, 0);
  while (true) {
    f(TUGame(n, v));
    std::size_t k = 1;
    while (k < m && v[k] == top) v[k++] = 0;
    if (k == m) return;
    ++v[k];
  }
}

std::vector<Family> all_families(int n) {
  auto all = all_coalitions(n);
  std::vector<Family> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << all.size()); ++m) {
    Family f;
    for (std::size_t k = 0; k < all.size(); ++k)
      if (m >> k & 1) f.push_back(all[k]);
    out.push_back(f);
  }
  return out;
}

PayoffVector pv(std::int64_t a, std::int64_t b) { return PayoffVector{Rational(a), Rational(b)}; }

Outcome g2_core() {
  TUGame g(2, {0, 10, 10, 30});
  auto core = enumerate_integer_core(g);
  std::vector<PayoffVector> expect;
  for (int x = 10; x <= 20; ++x) expect.push_back(pv(x, 30 - x));
  return {core == expect, std::to_string(core.size()) + " vectors"};
}

Outcome verdict_table() {
  TUGame g(2, {0, 10, 10, 30});
  Coalition s1 = Coalition::of({1}), s2 = Coalition::of({2}), s12 = Coalition::of({1, 2});
  struct Row {
    Player i;
    Family known;
    PayoffVector x;
    bool acceptable;
  };
  std::vector<Row> rows{{1, {}, pv(9, 21), true},
                        {1, {s1}, pv(9, 21), false},
                        {1, {s1}, pv(10, 10), true},
                        {1, {s12}, pv(10, 10), false},
                        {2, {s2}, pv(30, 0), false}};
  int ok = 0;
  for (const auto& r : rows) ok += decide(g, r.i, r.known, r.x).acceptable() == r.acceptable;
  bool witness = decide(g, 1, {s1}, pv(9, 21)).witness->payoff == pv(10, 0);
  return {ok == 5 && witness, std::to_string(ok) + "/5 verdicts, witness ({1},(10,0)) " + (witness ? "ok" : "wrong")};
}

Outcome exclusivity() {
  auto fams = all_families(2);
  std::uint64_t queries = 0, nodes = 0, failures = 0;
  for_each_game(2, 6, [&](const TUGame& g) {
    CriterionBuilder builder(g);
    GridOracle oracle(g);
    for (const auto& x : grid_vectors_up_to(g))
      for (Player i = 1; i <= 2; ++i) {
        Formula crit = builder.build(i, x);
        for (const auto& f : fams) {
          ++queries;
          Verdict v = decide(g, i, f, x);
          ProofEmitter e({i}, knowledge_context(g, f), oracle);
          std::optional<ProofTree> proof, other;
          if (v.acceptable()) {
            proof = e.prove_acceptable(crit);
            other = e.prove_unacceptable(crit);
          } else {
            proof = e.prove_unacceptable(crit, builder.disjunct(i, v.witness->coalition, v.witness->payoff.point(), x.point()));
            other = e.prove_acceptable(crit);
          }
          if (!proof || other || !check_proof(*proof, oracle)) {
            ++failures;
            continue;
          }
          nodes += proof_size(*proof);
        }
      }
  });
  return {failures == 0, std::to_string(queries) + " queries, " + std::to_string(nodes) + " proof nodes checked, " +
                             std::to_string(failures) + " failures"};
}

Outcome characterization() {
  std::uint64_t checks = 0, failures = 0, games = 0;
  for (int n : {2, 3}) {
    auto covering = covering_profiles(n);
    for_each_game(n, 4, [&](const TUGame& g) {
      ++games;
      SweepDomain d(g);
      for (const auto& p : covering) {
        ++checks;
        failures += !characterizes_core(d, p).characterizes_core;
      }
    });
    // Necessity: a profile leaving S unknown accepts the constructed non-core payoff.
    for (const auto& p : all_profiles(n)) {
      if (p.covers()) continue;
      Family known = p.known_union();
      for (Coalition s : all_coalitions(n)) {
        if (family_contains(known, s)) continue;
        ++checks;
        auto [g, x] = counterexample_game(n, s);
        bool unanimous = true;
        for (Player i = 1; i <= n; ++i) unanimous = unanimous && decide(g, i, p.of(i), x).acceptable();
        failures += !(unanimous && !core_membership(g, x));
      }
    }
  }
  return {failures == 0, std::to_string(games) + " games, " + std::to_string(checks) + " checks, " +
                             std::to_string(failures) + " failures"};
}

Outcome irrelevance() {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> worth(0, 6), player(1, 3);
  auto all = all_coalitions(3);
  int instances = 0, flips = 0;
  while (instances < 200) {
    std::vector<std::int64_t> v(8, 0);
    for (std::size_t m = 1; m < 8; ++m) v[m] = worth(rng);
    TUGame g(3, v);
    Player i = player(rng);
    Family known;
    for (Coalition s : all)
      if (rng() & 1) known.push_back(s);
    std::vector<Coalition> candidates;
    for (Coalition t : all)
      if (!t.contains(i) && !family_contains(known, t)) candidates.push_back(t);
    if (candidates.empty()) continue;
    Coalition t = candidates[rng() % candidates.size()];
    ++instances;
    flips += !irrelevance_invariance(g, i, known, t, Sweep::Grid);
  }
  return {flips == 0, std::to_string(instances) + " instances, " + std::to_string(flips) + " flips"};
}

Outcome bondareva_shapley() {
  std::uint64_t games = 0, disagreements = 0, nonempty = 0;
  for_each_game(3, 4, [&](const TUGame& g) {
    ++games;
    bool bs = bondareva_shapley_nonempty(g);
    auto lp = core_point_lp(g);
    if (lp && !core_membership(g, PayoffVector(Point(lp->begin(), lp->end())))) ++disagreements;
    if (bs != lp.has_value()) ++disagreements;
    nonempty += bs;
  });
  return {disagreements == 0, std::to_string(games) + " games (" + std::to_string(nonempty) + " with nonempty core), " +
                                  std::to_string(disagreements) + " disagreements"};
}

Outcome replica_counts() {
  bool ok = true;
  std::ostringstream detail;
  for (int k = 2; k <= 8; ++k) {
    auto g = knowledge_growth(k);
    std::int64_t expect = k * k + 4 * k - 1;
    ok = ok && g.count == expect && g.average == Rational(expect, 2 * k);
    detail << (k > 2 ? " " : "counts ") << g.count;
  }
  ReplicaEconomy e({}, 2);
  std::set<std::string> names;
  for (Coalition s : effective_coalitions(2)) names.insert(e.name(s));
  const std::set<std::string> expect{"{(1,1)}", "{(1,2)}", "{(2,1)}", "{(2,2)}",
                                     "{(1,1),(2,1)}", "{(1,2),(2,1)}", "{(1,1),(2,2)}", "{(1,2),(2,2)}",
                                     "{(1,1),(1,2),(2,1)}", "{(1,1),(2,1),(2,2)}",
                                     "{(1,1),(1,2),(2,1),(2,2)}"};
  bool list = names == expect;
  detail << "; k=2 list " << (list ? "matches" : "differs");
  return {ok && list, detail.str()};
}

Allocation diagonal(const ReplicaEconomy& e, const Rational& t) {
  return replicate(e, Bundle{t, t}, Bundle{1 - t, 1 - t});
}

bool contains(const std::vector<Allocation>& xs, const Allocation& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

Outcome edgeworth_core() {
  ReplicaEconomy e(EdgeworthEconomy{8, UtilityKind::CesHalf}, 1);
  auto core = grid_core(e);
  int retained = 0, rejected = 0, wrong = 0;
  for (int u = 0; u <= 8; ++u) {
    Rational t(u, 8);
    bool in = contains(core, diagonal(e, t));
    if (t >= Rational(3, 8) && t <= Rational(5, 8)) {
      retained += in;
      wrong += !in;
    } else if (t < Rational(1, 4) || t > Rational(3, 4)) {
      rejected += !in;
      wrong += in;
    }
  }
  bool split = contains(core, diagonal(e, Rational(1, 2)));
  return {wrong == 0 && split, "grid core " + std::to_string(core.size()) + " allocations; " + std::to_string(retained) +
                                   " inner diagonal points retained, " + std::to_string(rejected) +
                                   " outer points rejected, equal split " + (split ? "retained" : "missing")};
}

Outcome replication_shrinks() {
  EdgeworthEconomy base{8, UtilityKind::CesHalf};
  ReplicaEconomy e1(base, 1), e2(base, 2);
  auto c1 = grid_core(e1);
  auto c2 = grid_core(e2);
  std::set<std::vector<Rational>> projected;
  bool subset = true;
  for (const auto& x : c2) {
    auto p = project(e2, x);
    if (!p) {
      subset = false;
      continue;
    }
    Allocation back = replicate(e1, p->first, p->second);
    subset = subset && contains(c1, back);
    projected.insert({p->first.good1, p->first.good2, p->second.good1, p->second.good2});
  }
  bool strict = projected.size() < c1.size();
  // An eliminated point that only a near-balanced prefix coalition rejects.
  GridOptions without_prefixes;
  without_prefixes.withheld_groups = {3};
  std::string example = "none";
  for (const auto& x : c1) {
    Allocation lifted = replicate(e2, x.bundles[0], x.bundles[1]);
    if (contains(c2, lifted)) continue;
    auto d = find_dominator(e2, lifted);
    if (d && d->group == 3 && !find_dominator(e2, lifted, without_prefixes)) {
      example = to_string(e1, x) + " blocked by " + e2.name(d->coalition);
      break;
    }
  }
  bool ok = subset && strict && example != "none";
  return {ok, "|core E1| = " + std::to_string(c1.size()) + ", |proj core E2| = " + std::to_string(projected.size()) +
                  (subset ? ", subset" : ", NOT a subset") + "; withheld-prefix witness: " + example};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "two-player core", 1, g2_core},
      {2, "two-player verdict table", 1, verdict_table},
      {3, "verdict exclusivity with checked proofs (n=2, v<=6)", 300, exclusivity},
      {4, "covering knowledge characterizes the core (n<=3, v<=4)", 600, characterization},
      {5, "irrelevant coalitions change no verdict (200 instances)", 300, irrelevance},
      {6, "Bondareva-Shapley vs LP (n=3, v<=4)", 600, bondareva_shapley},
      {7, "effective coalition counts and k=2 list", 10, replica_counts},
      {8, "Edgeworth grid core, k=1, D=8", 60, edgeworth_core},
      {9, "replication shrinks the grid core, D=8", 300, replication_shrinks},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_time = secs <= c.limit_seconds;
    bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", secs, c.limit_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " -- " << o.detail << " ["
              << timing << (in_time ? "" : ", over time") << "]" << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
