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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epicore/coalition.hpp"
#include "epicore/error.hpp"
#include "epicore/rational.hpp"

namespace epicore {

inline constexpr int kMaxGamePlayers = 20;

// TU game with integer worths, stored densely by coalition mask.
class TUGame {
 public:
  // values[mask] is v of that coalition; values[0] must be 0.
  TUGame(int n, std::vector<std::int64_t> values, std::optional<std::int64_t> bound = std::nullopt)
      : n_(n), v_(std::move(values)) {
    if (n < 1 || n > kMaxGamePlayers)
      throw InvalidInput("player count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxGamePlayers));
    if (v_.size() != (std::size_t{1} << n))
      throw InvalidInput("expected " + std::to_string((std::size_t{1} << n) - 1) + " coalition values");
    if (v_[0] != 0) throw InvalidInput("v(empty set) must be 0");
    std::int64_t top = 0;
    for (std::size_t m = 1; m < v_.size(); ++m) {
      if (v_[m] < 0)
        throw InvalidInput("negative value for coalition \"" + to_key(Coalition::from_bits(m)) + "\"");
      top = std::max(top, v_[m]);
    }
    bound_ = bound.value_or(2 * top + 1);
    if (bound_ <= top)
      throw InvalidInput("bound " + std::to_string(bound_) + " must exceed every coalition value (max " +
                         std::to_string(top) + ")");
  }

  static TUGame from_map(int n, const std::map<std::uint64_t, std::int64_t>& by_mask,
                         std::optional<std::int64_t> bound = std::nullopt) {
    if (n < 1 || n > kMaxGamePlayers)
      throw InvalidInput("player count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxGamePlayers));
    std::vector<std::int64_t> values(std::size_t{1} << n, 0);
    std::vector<bool> seen(values.size(), false);
    for (auto [mask, value] : by_mask) {
      if (mask == 0 || mask >= values.size()) throw InvalidInput("coalition outside 1.." + std::to_string(n));
      values[mask] = value;
      seen[mask] = true;
    }
    for (std::size_t m = 1; m < values.size(); ++m)
      if (!seen[m]) throw InvalidInput("missing coalition value for key \"" + to_key(Coalition::from_bits(m)) + "\"");
    return TUGame(n, std::move(values), bound);
  }

  int players() const { return n_; }
  std::int64_t bound() const { return bound_; }
  Coalition grand() const { return Coalition::grand(n_); }
  std::int64_t value(Coalition s) const { return v_.at(s.bits()); }
  const std::vector<std::int64_t>& values() const { return v_; }

  friend bool operator==(const TUGame&, const TUGame&) = default;

 private:
  int n_;
  std::vector<std::int64_t> v_;
  std::int64_t bound_ = 1;
};

// Payoff vector on the 1/n grid. Entry k belongs to player k+1.
class PayoffVector {
 public:
  PayoffVector() = default;
  explicit PayoffVector(Point entries) : x_(std::move(entries)) {}
  PayoffVector(std::initializer_list<Rational> entries) : x_(entries) {}

  std::size_t size() const { return x_.size(); }
  const Rational& operator[](std::size_t k) const { return x_[k]; }
  const Rational& at(Player p) const { return x_.at(p - 1); }
  const Point& point() const { return x_; }

  Rational sum(Coalition s) const {
    Rational total = 0;
    s.for_each([&](Player p) { total += x_[p - 1]; });
    return total;
  }
  Rational total() const {
    Rational t = 0;
    for (const auto& e : x_) t += e;
    return t;
  }
  bool integral() const {
    return std::all_of(x_.begin(), x_.end(), [](const Rational& r) { return is_integer(r); });
  }

  friend bool operator==(const PayoffVector&, const PayoffVector&) = default;
  friend bool operator<(const PayoffVector& a, const PayoffVector& b) { return a.x_ < b.x_; }

 private:
  Point x_;
};

inline std::string to_string(const PayoffVector& x) { return to_string(x.point()); }

inline bool on_grid(const TUGame& g, const Point& x) {
  if (static_cast<int>(x.size()) != g.players()) return false;
  for (const auto& e : x) {
    if (e < 0 || e > g.bound()) return false;
    if ((e * g.players()).denominator() != 1) return false;
  }
  return true;
}

inline void require_dimension(const TUGame& g, const PayoffVector& x) {
  if (static_cast<int>(x.size()) != g.players())
    throw InvalidInput("payoff vector has " + std::to_string(x.size()) + " entries, game has " +
                       std::to_string(g.players()) + " players");
}

// Throws unless x is a well-formed At1 payoff vector for g.
inline void require_grid(const TUGame& g, const PayoffVector& x) {
  require_dimension(g, x);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Rational& e = x[k];
    if (e < 0 || e > g.bound())
      throw InvalidInput("entry " + to_string(e) + " for player " + std::to_string(k + 1) + " outside [0, " +
                         std::to_string(g.bound()) + "]");
    if ((e * g.players()).denominator() != 1)
      throw InvalidInput("off-grid entry " + to_string(e) + " for player " + std::to_string(k + 1) +
                         " (must be a multiple of 1/" + std::to_string(g.players()) + ")");
  }
}

inline bool core_membership(const TUGame& g, const PayoffVector& x) {
  require_dimension(g, x);
  if (x.total() != g.value(g.grand())) return false;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << g.players()); ++m) {
    Coalition s = Coalition::from_bits(m);
    if (x.sum(s) < g.value(s)) return false;
  }
  return true;
}

namespace detail {

// Calls f on every vector of n non-negative integers summing to at most
// `budget` (or exactly `budget` when exact), in lexicographic order.
template <class F>
void for_each_composition(int n, std::int64_t budget, bool exact, F&& f) {
  std::vector<std::int64_t> cur(n, 0);
  auto rec = [&](auto&& self, int k, std::int64_t left) -> void {
    if (k == n - 1) {
      for (std::int64_t a = exact ? left : 0; a <= left; ++a) {
        cur[k] = a;
        f(static_cast<const std::vector<std::int64_t>&>(cur));
      }
      return;
    }
    for (std::int64_t a = 0; a <= left; ++a) {
      cur[k] = a;
      self(self, k + 1, left - a);
    }
  };
  if (n > 0 && budget >= 0) rec(rec, 0, budget);
}

}  // namespace detail

// Integer payoff vectors with sum <= v(N) (the sweep domain used by the
// knowledge theorems), in lexicographic order.
inline std::vector<PayoffVector> integer_vectors_up_to(const TUGame& g) {
  std::vector<PayoffVector> out;
  detail::for_each_composition(g.players(), g.value(g.grand()), false, [&](const std::vector<std::int64_t>& c) {
    out.emplace_back(Point(c.begin(), c.end()));
  });
  return out;
}

// Grid payoff vectors (multiples of 1/n) with sum <= v(N).
inline std::vector<PayoffVector> grid_vectors_up_to(const TUGame& g) {
  std::vector<PayoffVector> out;
  const int n = g.players();
  detail::for_each_composition(n, g.value(g.grand()) * n, false, [&](const std::vector<std::int64_t>& c) {
    Point p;
    p.reserve(n);
    for (auto u : c) p.emplace_back(u, n);
    out.emplace_back(std::move(p));
  });
  return out;
}

inline std::vector<PayoffVector> enumerate_integer_core(const TUGame& g) {
  std::vector<PayoffVector> out;
  detail::for_each_composition(g.players(), g.value(g.grand()), true, [&](const std::vector<std::int64_t>& c) {
    PayoffVector x(Point(c.begin(), c.end()));
    if (core_membership(g, x)) out.push_back(std::move(x));
  });
  return out;
}

// y dominates x via S: weakly better for all of S, strictly for someone.
// Feasibility of y for S is checked separately by callers.
inline bool dominates(const PayoffVector& y, const PayoffVector& x, Coalition s) {
  bool strict = false;
  bool weak = true;
  s.for_each([&](Player p) {
    if (y.at(p) < x.at(p)) weak = false;
    else if (y.at(p) > x.at(p)) strict = true;
  });
  return weak && strict && !s.empty();
}

inline bool dominates(const TUGame& g, const PayoffVector& y, const PayoffVector& x, Coalition s) {
  require_dimension(g, y);
  require_dimension(g, x);
  return dominates(y, x, s);
}

struct BlockingWitness {
  Coalition coalition;
  PayoffVector payoff;
  friend bool operator==(const BlockingWitness&, const BlockingWitness&) = default;
};

// Spreads the deficit of the first blocking coalition evenly over its members.
inline std::optional<BlockingWitness> blocking_witness(const TUGame& g, const PayoffVector& x) {
  require_dimension(g, x);
  if (!x.integral()) throw InvalidInput("blocking witness needs an integer payoff vector, got " + to_string(x));
  for (Coalition s : all_coalitions(g.players())) {
    Rational deficit = Rational(g.value(s)) - x.sum(s);
    if (deficit <= 0) continue;
    Point y(g.players(), Rational(0));
    Rational share = deficit / Rational(g.players());
    s.for_each([&](Player p) { y[p - 1] = x.at(p) + share; });
    return BlockingWitness{s, PayoffVector(std::move(y))};
  }
  return std::nullopt;
}

}  // namespace epicore
