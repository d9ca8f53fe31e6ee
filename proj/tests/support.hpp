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
#include <random>
#include <string>
#include <vector>

#include "epicore/game.hpp"

namespace epicore::testing {

inline TUGame g2() { return TUGame(2, {0, 10, 10, 30}); }

inline PayoffVector pv(std::initializer_list<std::int64_t> xs) {
  Point p;
  for (auto x : xs) p.emplace_back(x);
  return PayoffVector(std::move(p));
}

inline TUGame random_game(std::mt19937_64& rng, int n, int top) {
  std::uniform_int_distribution<int> d(0, top);
  std::vector<std::int64_t> v(std::size_t{1} << n, 0);
  for (std::size_t m = 1; m < v.size(); ++m) v[m] = d(rng);
  return TUGame(n, std::move(v));
}

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

inline std::string data_file(const std::string& name) { return std::string(EPICORE_DATA_DIR) + "/" + name; }

}  // namespace epicore::testing
