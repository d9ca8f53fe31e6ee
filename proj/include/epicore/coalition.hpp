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
#include <bit>
#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "epicore/error.hpp"

namespace epicore {

using Player = int;  // players are named 1..n

inline constexpr int kMaxPlayers = 64;

// A set of players stored as a bitmask (bit p-1 for player p).
class Coalition {
 public:
  constexpr Coalition() = default;

  static constexpr Coalition from_bits(std::uint64_t bits) {
    Coalition c;
    c.bits_ = bits;
    return c;
  }
  static Coalition of(std::initializer_list<Player> members) {
    Coalition c;
    for (Player p : members) c = c.with(p);
    return c;
  }
  static Coalition of(const std::vector<Player>& members) {
    Coalition c;
    for (Player p : members) c = c.with(p);
    return c;
  }
  static constexpr Coalition grand(int n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr Coalition singleton(Player p) {
    return from_bits(std::uint64_t{1} << (p - 1));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Player p) const {
    return p >= 1 && p <= kMaxPlayers && ((bits_ >> (p - 1)) & 1U);
  }
  constexpr bool subset_of(Coalition other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // Highest player id present, 0 for the empty set.
  constexpr int max_player() const { return 64 - std::countl_zero(bits_); }

  Coalition with(Player p) const {
    if (p < 1 || p > kMaxPlayers)
      throw InvalidInput("player id " + std::to_string(p) + " out of range");
    return from_bits(bits_ | (std::uint64_t{1} << (p - 1)));
  }
  constexpr Coalition without(Player p) const {
    return from_bits(bits_ & ~(std::uint64_t{1} << (p - 1)));
  }

  std::vector<Player> members() const {
    std::vector<Player> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b; b &= b - 1) f(Player(std::countr_zero(b) + 1));
  }

  friend constexpr Coalition operator|(Coalition a, Coalition b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr Coalition operator&(Coalition a, Coalition b) { return from_bits(a.bits_ & b.bits_); }
  friend constexpr bool operator==(Coalition, Coalition) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Canonical order: by cardinality, then lexicographic on the sorted members.
constexpr int compare(Coalition a, Coalition b) {
  if (a == b) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  // Same size: the first differing member decides; the set holding the
  // smaller player at that position comes first.
  std::uint64_t diff = a.bits() ^ b.bits();
  std::uint64_t lowest = diff & (~diff + 1);
  return (a.bits() & lowest) ? -1 : 1;
}

struct CanonicalLess {
  constexpr bool operator()(Coalition a, Coalition b) const { return compare(a, b) < 0; }
};

// All nonempty coalitions of 1..n in canonical order.
inline std::vector<Coalition> all_coalitions(int n) {
  if (n < 0 || n > 24) throw UnsupportedSize("cannot enumerate coalitions of " + std::to_string(n) + " players");
  std::vector<Coalition> out;
  out.reserve((std::size_t{1} << n) - 1);
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) out.push_back(Coalition::from_bits(m));
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

// "1,2" style key.
inline std::string to_key(Coalition c) {
  std::string out;
  c.for_each([&](Player p) {
    if (!out.empty()) out += ',';
    out += std::to_string(p);
  });
  return out;
}

// Parses "1,2" (ascending order not required). n bounds the player ids.
inline Coalition parse_coalition(std::string_view text, int n) {
  Coalition c;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(start, comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int p = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), p);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw InvalidInput("malformed coalition \"" + std::string(text) + "\"");
    if (p < 1 || p > n)
      throw InvalidInput("player " + std::to_string(p) + " out of range in coalition \"" + std::string(text) + "\"");
    if (c.contains(p))
      throw InvalidInput("duplicate player in coalition \"" + std::string(text) + "\"");
    c = c.with(p);
    start = comma + 1;
  }
  return c;
}

using Family = std::vector<Coalition>;

// Sorts canonically and removes duplicates.
inline Family canonical_family(Family f) {
  std::sort(f.begin(), f.end(), CanonicalLess{});
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

// "1;1,2" style family; the empty string is the empty family.
inline Family parse_family(std::string_view text, int n) {
  Family out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    if (semi == std::string_view::npos) semi = text.size();
    out.push_back(parse_coalition(text.substr(start, semi - start), n));
    start = semi + 1;
  }
  return canonical_family(std::move(out));
}

inline std::string to_key(const Family& f) {
  std::string out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k) out += ';';
    out += to_key(f[k]);
  }
  return out;
}

inline bool family_contains(const Family& f, Coalition c) {
  return std::find(f.begin(), f.end(), c) != f.end();
}

}  // namespace epicore
