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
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epicore/coalition.hpp"
#include "epicore/emitter.hpp"
#include "epicore/error.hpp"
#include "epicore/formula.hpp"
#include "epicore/proof.hpp"
#include "epicore/rational.hpp"

namespace epicore {

struct Bundle {
  Rational good1;
  Rational good2;
  friend bool operator==(const Bundle&, const Bundle&) = default;
};

inline std::string to_string(const Bundle& b) { return "(" + to_string(b.good1) + "," + to_string(b.good2) + ")"; }

// Only CES with exponent 1/2, u(a, b) = (sqrt a + sqrt b)^2, is implemented.
enum class UtilityKind { CesHalf };

inline UtilityKind parse_utility(std::string_view name, const Rational& rho) {
  if (name != "ces") throw InvalidInput("unsupported utility \"" + std::string(name) + "\"");
  if (rho != Rational(1, 2)) throw InvalidInput("unsupported CES exponent " + to_string(rho) + " (only 1/2)");
  return UtilityKind::CesHalf;
}

namespace detail {

using Wide = __int128;

inline int sign(Wide v) { return (v > 0) - (v < 0); }

// Sign of p + q sqrt(m) for m >= 0.
inline int sign_sqrt_sum(Wide p, Wide q, Wide m) {
  if (q == 0 || m == 0) return sign(p);
  int sp = sign(p), sq = sign(q);
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  Wide lhs = p * p, rhs = q * q * m;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sp : sq;
}

// Sign of (sqrt a1 + sqrt b1) - (sqrt a2 + sqrt b2) over non-negative integers.
inline int compare_root_sums(Wide a1, Wide b1, Wide a2, Wide b2) {
  Wide d = a1 + b1 - a2 - b2;
  Wide p1 = a1 * b1, p2 = a2 * b2;
  int t = sign_sqrt_sum(d, 2, p1);  // sign of d + 2 sqrt(p1)
  if (t < 0) return -1;
  if (t == 0) return p2 > 0 ? -1 : 0;
  // both sides non-negative: compare squares
  return sign_sqrt_sum(d * d + 4 * p1 - 4 * p2, 4 * d, p1);
}

inline constexpr std::int64_t kMaxScaledBundle = std::int64_t{1} << 24;

}  // namespace detail

inline std::strong_ordering utility_compare(UtilityKind, const Bundle& a, const Bundle& b) {
  for (const Rational* r : {&a.good1, &a.good2, &b.good1, &b.good2})
    if (*r < 0) throw InvalidInput("negative bundle entry " + to_string(*r));
  std::int64_t l = 1;
  for (const Rational* r : {&a.good1, &a.good2, &b.good1, &b.good2}) l = std::lcm(l, r->denominator());
  auto scaled = [&](const Rational& r) {
    std::int64_t v = r.numerator() * (l / r.denominator());
    if (v > detail::kMaxScaledBundle || l > detail::kMaxScaledBundle)
      throw UnsupportedSize("bundle " + to_string(r) + " too large for exact comparison");
    return static_cast<detail::Wide>(v);
  };
  int s = detail::compare_root_sums(scaled(a.good1), scaled(a.good2), scaled(b.good1), scaled(b.good2));
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

struct EdgeworthEconomy {
  int grid_denominator = 8;
  UtilityKind utility = UtilityKind::CesHalf;
};

inline Bundle endowment_of_type(int type) { return type == 1 ? Bundle{1, 0} : Bundle{0, 1}; }

// Participants are indexed 0..2k-1: copies of type 1 first, then type 2.
// As formula slots, participant p is player p+1.
class ReplicaEconomy {
 public:
  ReplicaEconomy(EdgeworthEconomy base, int k) : base_(base), k_(k) {
    if (k < 1 || k > 32) throw InvalidInput("replica count " + std::to_string(k) + " outside 1..32");
    if (base.grid_denominator < 1) throw InvalidInput("grid denominator must be positive");
  }

  const EdgeworthEconomy& base() const { return base_; }
  int replicas() const { return k_; }
  int participants() const { return 2 * k_; }
  int denominator() const { return base_.grid_denominator; }
  int type(int p) const { return p < k_ ? 1 : 2; }
  int copy(int p) const { return p < k_ ? p + 1 : p - k_ + 1; }
  int index(int type, int copy) const { return (type == 1 ? 0 : k_) + copy - 1; }
  Bundle endowment(int p) const { return endowment_of_type(type(p)); }
  Coalition everyone() const { return Coalition::grand(participants()); }
  std::string name(int p) const { return "(" + std::to_string(type(p)) + "," + std::to_string(copy(p)) + ")"; }

  std::string name(Coalition s) const {
    std::string out = "{";
    s.for_each([&](Player q) {
      if (out.size() > 1) out += ',';
      out += name(q - 1);
    });
    return out + "}";
  }

  std::strong_ordering compare(const Bundle& a, const Bundle& b) const { return utility_compare(base_.utility, a, b); }

 private:
  EdgeworthEconomy base_;
  int k_;
};

// Parses "(1,2)" or "1,2" into a participant index.
inline int parse_participant(const ReplicaEconomy& e, std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '(' || c == ')' || c == ' '; }), s.end());
  auto comma = s.find(',');
  if (comma == std::string::npos) throw InvalidInput("participant \"" + std::string(text) + "\" is not (type,copy)");
  int type = 0, copy = 0;
  try {
    type = std::stoi(s.substr(0, comma));
    copy = std::stoi(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw InvalidInput("participant \"" + std::string(text) + "\" is not (type,copy)");
  }
  if ((type != 1 && type != 2) || copy < 1 || copy > e.replicas())
    throw InvalidInput("participant \"" + std::string(text) + "\" outside the economy");
  return e.index(type, copy);
}

struct Allocation {
  std::vector<Bundle> bundles;  // one per participant
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

inline bool operator<(const Allocation& a, const Allocation& b) {
  auto key = [](const Allocation& x) {
    std::vector<Rational> v;
    for (const auto& b : x.bundles) {
      v.push_back(b.good1);
      v.push_back(b.good2);
    }
    return v;
  };
  return key(a) < key(b);
}

inline std::string to_string(const ReplicaEconomy& e, const Allocation& x) {
  std::string out = "[";
  for (std::size_t p = 0; p < x.bundles.size(); ++p) {
    if (p) out += ' ';
    out += e.name(static_cast<int>(p)) + ":" + to_string(x.bundles[p]);
  }
  return out + "]";
}

inline Point flatten(const Allocation& x) {
  Point p;
  for (const auto& b : x.bundles) {
    p.push_back(b.good1);
    p.push_back(b.good2);
  }
  return p;
}

inline void require_allocation(const ReplicaEconomy& e, const Allocation& x) {
  if (static_cast<int>(x.bundles.size()) != e.participants())
    throw InvalidInput("allocation has " + std::to_string(x.bundles.size()) + " bundles, economy has " +
                       std::to_string(e.participants()) + " participants");
  for (std::size_t p = 0; p < x.bundles.size(); ++p)
    if (x.bundles[p].good1 < 0 || x.bundles[p].good2 < 0)
      throw InvalidInput("negative bundle for participant " + e.name(static_cast<int>(p)));
}

inline Bundle total(const ReplicaEconomy& e, const Allocation& x, Coalition s) {
  Bundle t{0, 0};
  s.for_each([&](Player q) {
    t.good1 += x.bundles.at(q - 1).good1;
    t.good2 += x.bundles.at(q - 1).good2;
  });
  (void)e;
  return t;
}

inline Bundle endowment(const ReplicaEconomy& e, Coalition s) {
  Bundle t{0, 0};
  s.for_each([&](Player q) {
    Bundle b = e.endowment(q - 1);
    t.good1 += b.good1;
    t.good2 += b.good2;
  });
  return t;
}

inline bool feasible(const ReplicaEconomy& e, const Allocation& x) {
  require_allocation(e, x);
  return total(e, x, e.everyone()) == endowment(e, e.everyone());
}

inline bool on_grid(const ReplicaEconomy& e, const Allocation& x) {
  for (const auto& b : x.bundles)
    if (e.denominator() % b.good1.denominator() || e.denominator() % b.good2.denominator()) return false;
  return true;
}

// y dominates x via S; y must redistribute exactly the endowment of S.
inline bool econ_dominates(const ReplicaEconomy& e, const Allocation& y, const Allocation& x, Coalition s) {
  require_allocation(e, y);
  require_allocation(e, x);
  if (s.empty() || !s.subset_of(e.everyone())) throw InvalidInput("coalition outside the economy");
  if (!(total(e, y, s) == endowment(e, s)))
    throw InvalidInput("allocation is not feasible for " + e.name(s));
  bool strict = false;
  bool weak = true;
  s.for_each([&](Player q) {
    auto c = e.compare(y.bundles[q - 1], x.bundles[q - 1]);
    if (c < 0) weak = false;
    if (c > 0) strict = true;
  });
  return weak && strict;
}

// Equal-treatment projection (type-1 bundle, type-2 bundle), if it applies.
inline std::optional<std::pair<Bundle, Bundle>> project(const ReplicaEconomy& e, const Allocation& x) {
  require_allocation(e, x);
  for (int p = 0; p < e.participants(); ++p)
    if (!(x.bundles[p] == x.bundles[e.index(e.type(p), 1)])) return std::nullopt;
  return std::pair{x.bundles[0], x.bundles[e.index(2, 1)]};
}

inline Allocation replicate(const ReplicaEconomy& e, const Bundle& type1, const Bundle& type2) {
  Allocation x;
  for (int p = 0; p < e.participants(); ++p) x.bundles.push_back(e.type(p) == 1 ? type1 : type2);
  return x;
}

struct EffectiveCoalition {
  Coalition members;
  int group;  // 1 singletons, 2 mixed pairs, 3 near-balanced prefixes, 4 everyone
};

// The four groups of effective coalitions of E_k, deduplicated (for k = 1
// the grand coalition is the mixed pair) and in canonical order.
inline std::vector<EffectiveCoalition> effective_groups(int k) {
  if (k < 1) throw InvalidInput("replica count must be positive");
  if (k > 32) throw UnsupportedSize("replica count " + std::to_string(k) + " too large");
  ReplicaEconomy e({}, k);
  auto slot = [&](int type, int copy) { return Coalition::singleton(e.index(type, copy) + 1); };
  std::vector<EffectiveCoalition> out;
  auto add = [&](Coalition s, int group) {
    for (const auto& c : out)
      if (c.members == s) return;
    out.push_back({s, group});
  };
  for (int type = 1; type <= 2; ++type)
    for (int n = 1; n <= k; ++n) add(slot(type, n), 1);
  for (int n = 1; n <= k; ++n)
    for (int m = 1; m <= k; ++m) add(slot(1, n) | slot(2, m), 2);
  auto prefix = [&](int ones, int twos) {
    Coalition s;
    for (int t = 1; t <= ones; ++t) s = s | slot(1, t);
    for (int t = 1; t <= twos; ++t) s = s | slot(2, t);
    return s;
  };
  for (int n = 2; n <= k; ++n) {
    add(prefix(n, n - 1), 3);
    add(prefix(n - 1, n), 3);
  }
  add(e.everyone(), 4);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return compare(a.members, b.members) < 0; });
  return out;
}

inline std::vector<Coalition> effective_coalitions(int k) {
  std::vector<Coalition> out;
  for (const auto& c : effective_groups(k)) out.push_back(c.members);
  return out;
}

struct KnowledgeGrowth {
  std::int64_t count;
  Rational average;  // coalitions per participant
};

inline KnowledgeGrowth knowledge_growth(int k) {
  if (k < 2) throw InvalidInput("knowledge growth is defined for at least 2 replicas");
  auto count = static_cast<std::int64_t>(effective_coalitions(k).size());
  return {count, Rational(count, 2 * k)};
}

inline std::string derived_game_note(const EdgeworthEconomy&) {
  return "v(S) = max { sum_{i in S} u_i(x_i) : sum_{i in S} x_i = sum_{i in S} e_i }  "
         "(not computed; cores are evaluated on allocations directly)";
}

enum class CoalitionMode { Effective, Exhaustive };

struct GridOptions {
  int refinement = 2;  // dominators live on the 1/(refinement * D) grid
  CoalitionMode mode = CoalitionMode::Effective;
  std::vector<int> withheld_groups;  // effective mode only
  std::uint64_t max_candidates = 2'000'000;
};

struct Domination {
  Coalition coalition;
  int group = 0;  // 0 in exhaustive mode
  Allocation dominator;
};

// Grid dominance search. Allocations are handled in integer units of
// 1/(refinement * D); bundles are ranked once by utility and a min-plus
// recursion over members decides whether S can improve on x.
class GridSolver {
 public:
  GridSolver(const ReplicaEconomy& e, GridOptions options = {}) : e_(e), opt_(std::move(options)) {
    if (opt_.refinement < 1) throw InvalidInput("refinement must be positive");
    if (opt_.mode == CoalitionMode::Exhaustive) {
      if (!opt_.withheld_groups.empty()) throw InvalidInput("withheld groups need effective mode");
      if (e.participants() > 12) throw UnsupportedSize("exhaustive coalitions need at most 6 replicas");
      for (Coalition s : all_coalitions(e.participants())) coalitions_.push_back({s, 0});
    } else {
      for (const auto& c : effective_groups(e.replicas()))
        if (std::find(opt_.withheld_groups.begin(), opt_.withheld_groups.end(), c.group) == opt_.withheld_groups.end())
          coalitions_.push_back(c);
    }
    // Singletons first: they are the cheapest test.
    std::stable_sort(coalitions_.begin(), coalitions_.end(),
                     [](const auto& a, const auto& b) { return a.members.size() < b.members.size(); });
    q_ = static_cast<std::int64_t>(e.denominator()) * opt_.refinement;
    side_ = e.replicas() * q_ + 1;
    if (side_ * side_ > 4'000'000) throw UnsupportedSize("bundle grid too fine for exact ranking");
    build_ranks();
  }

  const ReplicaEconomy& economy() const { return e_; }
  const std::vector<EffectiveCoalition>& coalitions() const { return coalitions_; }

  // Units of 1/q per good; x must lie on the 1/q grid.
  std::vector<std::int64_t> units(const Allocation& x) const {
    std::vector<std::int64_t> u;
    for (const auto& b : x.bundles)
      for (const Rational* r : {&b.good1, &b.good2}) {
        Rational s = *r * Rational(q_);
        if (s.denominator() != 1 || s.numerator() < 0 || s.numerator() >= side_)
          throw InvalidInput("bundle " + to_string(b) + " outside the solver grid");
        u.push_back(s.numerator());
      }
    return u;
  }

  bool blocked(const std::vector<std::int64_t>& u, Coalition s) const { return solve(u, s, nullptr); }

  std::optional<Domination> find_dominator(const Allocation& x) const {
    require_allocation(e_, x);
    auto u = units(x);
    for (const auto& c : coalitions_) {
      Allocation y;
      if (solve(u, c.members, &y)) return Domination{c.members, c.group, std::move(y)};
    }
    return std::nullopt;
  }

  bool blocked(const std::vector<std::int64_t>& u) const {
    for (const auto& c : coalitions_)
      if (solve(u, c.members, nullptr)) return true;
    return false;
  }

 private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  void build_ranks() {
    std::vector<std::pair<std::int64_t, std::int64_t>> all;
    all.reserve(static_cast<std::size_t>(side_ * side_));
    for (std::int64_t a = 0; a < side_; ++a)
      for (std::int64_t b = 0; b < side_; ++b) all.emplace_back(a, b);
    auto cmp = [](const auto& x, const auto& y) {
      return detail::compare_root_sums(x.first, x.second, y.first, y.second);
    };
    std::sort(all.begin(), all.end(), [&](const auto& x, const auto& y) { return cmp(x, y) < 0; });
    rank_.assign(static_cast<std::size_t>(side_ * side_), 0);
    int r = 0;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (k && cmp(all[k - 1], all[k]) != 0) ++r;
      rank_[all[k].first * side_ + all[k].second] = r;
    }
    levels_ = r + 1;
    // min_b_[level * side_ + a]: least b with rank(a, b) >= level.
    min_b_.assign(static_cast<std::size_t>(levels_ + 1) * side_, kInf);
    for (std::int64_t a = 0; a < side_; ++a) {
      std::int64_t b = 0;  // rank(a, .) is increasing in b
      for (int level = 0; level < levels_; ++level) {
        while (b < side_ && rank(a, b) < level) ++b;
        min_b_[level * side_ + a] = b < side_ ? b : kInf;
      }
    }
  }

  int rank(std::int64_t a, std::int64_t b) const { return rank_[a * side_ + b]; }
  std::int64_t need(int level, std::int64_t a) const { return level >= levels_ ? kInf : min_b_[level * side_ + a]; }

  // Existence (and optionally a witness) of a redistribution of S's
  // endowment making every member weakly and someone strictly better.
  bool solve(const std::vector<std::int64_t>& u, Coalition s, Allocation* witness) const {
    std::vector<int> members;
    s.for_each([&](Player p) { members.push_back(p - 1); });
    std::int64_t cap_a = 0, cap_b = 0;
    for (int p : members) (e_.type(p) == 1 ? cap_a : cap_b) += q_;
    const std::size_t width = static_cast<std::size_t>(cap_a + 1);
    std::vector<std::int64_t> weak(width, 0), strict(width, kInf), nw(width), ns(width);
    std::vector<std::vector<std::int64_t>> weak_hist, strict_hist;
    for (int p : members) {
      int level = rank(u[2 * p], u[2 * p + 1]);
      if (witness) {
        weak_hist.push_back(weak);
        strict_hist.push_back(strict);
      }
      for (std::size_t a = 0; a < width; ++a) {
        std::int64_t bw = kInf, bs = kInf;
        for (std::size_t t = 0; t <= a; ++t) {
          std::int64_t w = need(level, static_cast<std::int64_t>(t));
          std::int64_t st = need(level + 1, static_cast<std::int64_t>(t));
          bw = std::min(bw, weak[a - t] + w);
          bs = std::min({bs, strict[a - t] + w, weak[a - t] + st});
        }
        nw[a] = std::min(bw, kInf);
        ns[a] = std::min(bs, kInf);
      }
      weak.swap(nw);
      strict.swap(ns);
    }
    if (strict[cap_a] > cap_b) return false;
    if (witness) *witness = reconstruct(u, members, weak_hist, strict_hist, cap_a, cap_b);
    return true;
  }

  Allocation reconstruct(const std::vector<std::int64_t>& u, const std::vector<int>& members,
                         const std::vector<std::vector<std::int64_t>>& weak_hist,
                         const std::vector<std::vector<std::int64_t>>& strict_hist, std::int64_t cap_a,
                         std::int64_t cap_b) const {
    std::vector<std::pair<std::int64_t, std::int64_t>> got(members.size());
    std::int64_t a = cap_a;
    bool need_strict = true;
    std::int64_t budget = cap_b;
    for (std::size_t m = members.size(); m-- > 0;) {
      int p = members[m];
      int level = rank(u[2 * p], u[2 * p + 1]);
      bool found = false;
      for (std::int64_t t = 0; t <= a && !found; ++t) {
        for (int strict_here = 0; strict_here <= 1 && !found; ++strict_here) {
          if (!need_strict && strict_here) continue;
          std::int64_t mine = need(level + strict_here, t);
          const auto& prev = (need_strict && !strict_here) ? strict_hist[m] : weak_hist[m];
          if (mine >= kInf || prev[a - t] >= kInf || mine + prev[a - t] > budget) continue;
          got[m] = {t, mine};
          a -= t;
          budget -= mine;
          if (strict_here) need_strict = false;
          found = true;
        }
      }
      if (!found) throw std::logic_error("dominator reconstruction failed");
    }
    // Leftovers go to the first member; utility is increasing.
    got[0].first += a;
    got[0].second += budget;
    Allocation y;
    y.bundles.assign(e_.participants(), Bundle{0, 0});
    for (std::size_t m = 0; m < members.size(); ++m)
      y.bundles[members[m]] = Bundle{Rational(got[m].first, q_), Rational(got[m].second, q_)};
    return y;
  }

  const ReplicaEconomy& e_;
  GridOptions opt_;
  std::vector<EffectiveCoalition> coalitions_;
  std::int64_t q_ = 1, side_ = 1;
  int levels_ = 1;
  std::vector<int> rank_;
  std::vector<std::int64_t> min_b_;
};

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    out = out * (n - r + i) / i;
    if (out > (std::uint64_t{1} << 40)) return out;
  }
  return out;
}

}  // namespace detail

inline std::uint64_t grid_allocation_count(const ReplicaEconomy& e) {
  std::uint64_t per_good = detail::binomial(static_cast<std::uint64_t>(e.replicas()) * e.denominator() + e.participants() - 1,
                                            e.participants() - 1);
  if (per_good > (std::uint64_t{1} << 31)) return std::numeric_limits<std::uint64_t>::max();
  return per_good * per_good;
}

// Calls f on every feasible allocation of the 1/D grid (integer units of 1/D).
template <class F>
void for_each_grid_allocation(const ReplicaEconomy& e, F&& f) {
  const int n = e.participants();
  const std::int64_t supply = static_cast<std::int64_t>(e.replicas()) * e.denominator();
  std::vector<std::int64_t> u(2 * n);
  auto rec = [&](auto&& self, int p, std::int64_t left1, std::int64_t left2) -> void {
    if (p == n - 1) {
      u[2 * p] = left1;
      u[2 * p + 1] = left2;
      f(static_cast<const std::vector<std::int64_t>&>(u));
      return;
    }
    for (std::int64_t a = 0; a <= left1; ++a)
      for (std::int64_t b = 0; b <= left2; ++b) {
        u[2 * p] = a;
        u[2 * p + 1] = b;
        self(self, p + 1, left1 - a, left2 - b);
      }
  };
  rec(rec, 0, supply, supply);
}

inline Allocation from_units(const std::vector<std::int64_t>& u, std::int64_t denominator) {
  Allocation x;
  for (std::size_t k = 0; k < u.size(); k += 2) x.bundles.push_back({Rational(u[k], denominator), Rational(u[k + 1], denominator)});
  return x;
}

// Feasible grid allocations that no admitted coalition can improve upon, in
// lexicographic order of the participants' bundles.
inline std::vector<Allocation> grid_core(const ReplicaEconomy& e, const GridOptions& options = {}) {
  if (options.mode == CoalitionMode::Exhaustive && (e.replicas() > 2 || e.denominator() > 4))
    throw UnsupportedSize("exhaustive coalition mode supports k <= 2 and D <= 4");
  if (grid_allocation_count(e) > options.max_candidates)
    throw UnsupportedSize("grid has more than " + std::to_string(options.max_candidates) + " allocations");
  GridSolver solver(e, options);
  const std::int64_t r = options.refinement;
  std::vector<Allocation> out;
  std::vector<std::int64_t> fine;
  for_each_grid_allocation(e, [&](const std::vector<std::int64_t>& u) {
    fine.resize(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) fine[k] = u[k] * r;
    if (!solver.blocked(fine)) out.push_back(from_units(u, e.denominator()));
  });
  return out;
}

inline std::optional<Domination> find_dominator(const ReplicaEconomy& e, const Allocation& x,
                                                const GridOptions& options = {}) {
  return GridSolver(e, options).find_dominator(x);
}

// The pairing argument for unequal treatment: the worse-off copy of each
// type receives the average of its type's bundles (k = 2).
inline std::optional<Domination> midpoint_witness(const ReplicaEconomy& e, const Allocation& x) {
  if (e.replicas() != 2) throw InvalidInput("the midpoint construction is for two replicas");
  require_allocation(e, x);
  if (project(e, x)) return std::nullopt;
  Allocation y;
  y.bundles.assign(e.participants(), Bundle{0, 0});
  Coalition s;
  for (int type = 1; type <= 2; ++type) {
    int p1 = e.index(type, 1), p2 = e.index(type, 2);
    int worse = e.compare(x.bundles[p1], x.bundles[p2]) <= 0 ? p1 : p2;
    const Bundle &a = x.bundles[p1], &b = x.bundles[p2];
    y.bundles[worse] = Bundle{(a.good1 + b.good1) / 2, (a.good2 + b.good2) / 2};
    s = s.with(worse + 1);
  }
  if (!(total(e, y, s) == endowment(e, s)) || !econ_dominates(e, y, x, s)) return std::nullopt;
  return Domination{s, 2, std::move(y)};
}

// Non-logical axioms for economies: comparisons of utility levels.
class UtilityOracle : public ComparisonOracle {
 public:
  explicit UtilityOracle(const ReplicaEconomy& e) : e_(e) {}
  bool admits(const Point& p) const override {
    if (static_cast<int>(p.size()) != 2 * e_.participants()) return false;
    return std::all_of(p.begin(), p.end(), [](const Rational& r) { return r >= 0; });
  }
  bool admits_scope(Coalition s) const override { return s.subset_of(e_.everyone()); }
  bool slot_geq(const Point& y, const Point& x, Player i) const override {
    std::size_t k = 2 * static_cast<std::size_t>(i - 1);
    return e_.compare(Bundle{y[k], y[k + 1]}, Bundle{x[k], x[k + 1]}) >= 0;
  }

 private:
  const ReplicaEconomy& e_;
};

// Acceptability criterion of participant p restricted to the given atoms:
// ~ \/ (y^S & y^S >=_S x^N & y^S >_p x^N) over the atoms whose coalition holds p.
inline Formula econ_criterion(const ReplicaEconomy& e, int p, const Allocation& x, const std::vector<Achievable>& atoms) {
  Point xp = flatten(x);
  Coalition all = e.everyone();
  std::vector<Formula> terms;
  for (const auto& a : atoms) {
    if (!a.coalition.contains(p + 1)) continue;
    terms.push_back(conj({ach(a.payoff, a.coalition), geq(a.payoff, a.coalition, a.coalition, xp, all),
                          strictly_greater(a.payoff, a.coalition, Coalition::singleton(p + 1), xp, all)}));
  }
  if (terms.empty()) throw InvalidInput("no atom mentions participant " + e.name(p));
  return negation(disj(std::move(terms)));
}

struct PartialKnowledge {
  int participant;
  Domination domination;
  std::vector<Formula> knowledge;  // Gamma of the participant
  Formula criterion;
  ProofTree proof;                 // B_p[Gamma -> ~criterion]
};

// A participant and a one-atom knowledge set that reject x, with a checked proof.
inline std::optional<PartialKnowledge> partial_knowledge_witness(const ReplicaEconomy& e, const Allocation& x,
                                                                 const GridOptions& options = {}) {
  require_allocation(e, x);
  auto d = find_dominator(e, x, options);
  if (!d) return std::nullopt;
  int p = -1;
  d->coalition.for_each([&](Player q) {
    if (p < 0 && e.compare(d->dominator.bundles[q - 1], x.bundles[q - 1]) > 0) p = q - 1;
  });
  Achievable atom{flatten(d->dominator), d->coalition};
  Formula criterion = econ_criterion(e, p, x, {atom});
  std::vector<Formula> gamma{ach(atom.payoff, atom.coalition)};
  UtilityOracle oracle(e);
  ProofEmitter emitter({p + 1}, FormulaSet(gamma), oracle);
  auto proof = emitter.prove_unacceptable(criterion);
  if (!proof || !check_proof(*proof, oracle)) throw std::logic_error("rejection proof failed for " + to_string(e, x));
  return PartialKnowledge{p, std::move(*d), std::move(gamma), std::move(criterion), std::move(*proof)};
}

}  // namespace epicore
