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

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/rational.hpp>

#include "epicore/error.hpp"

// Boost 1.74's mixed rational/integer equality recurses forever once C++20
// adds reversed candidates. Exact non-template overloads take precedence.
namespace boost {
#define EPICORE_RATIONAL_EQ(T)                                                                                  \
  inline bool operator==(const rational<std::int64_t>& a, T b) { return a.denominator() == 1 && a.numerator() == b; } \
  inline bool operator==(T b, const rational<std::int64_t>& a) { return a == b; }                              \
  inline bool operator!=(const rational<std::int64_t>& a, T b) { return !(a == b); }                            \
  inline bool operator!=(T b, const rational<std::int64_t>& a) { return !(a == b); }
EPICORE_RATIONAL_EQ(int)
EPICORE_RATIONAL_EQ(long)
EPICORE_RATIONAL_EQ(long long)
#undef EPICORE_RATIONAL_EQ
}  // namespace boost

namespace epicore {

using Rational = boost::rational<std::int64_t>;
// Payoff vectors are short; keep them inline.
using Point = boost::container::small_vector<Rational, 4>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t value = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("malformed number \"" + std::string(whole) + "\"");
  return value;
}

}  // namespace detail

// Accepts "p", "p/q" and finite decimals such as "9.5".
inline Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t p = detail::parse_int(text.substr(0, slash), text);
    std::int64_t q = detail::parse_int(text.substr(slash + 1), text);
    if (q == 0) throw InvalidInput("zero denominator in \"" + std::string(text) + "\"");
    return Rational(p, q);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) throw InvalidInput("too many decimals in \"" + std::string(text) + "\"");
    bool negative = !text.empty() && text.front() == '-';
    std::string_view whole = text.substr(0, dot);
    std::int64_t ip = (whole.empty() || whole == "-") ? 0 : detail::parse_int(whole, text);
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    std::int64_t fp = frac.empty() ? 0 : detail::parse_int(frac, text);
    if (fp < 0) throw InvalidInput("malformed number \"" + std::string(text) + "\"");
    Rational r(ip);
    r += negative ? Rational(-fp, scale) : Rational(fp, scale);
    return r;
  }
  return Rational(detail::parse_int(text, text));
}

// Comma separated list of rationals, e.g. "9,21" or "1/2,3/2".
inline Point parse_point(std::string_view text) {
  Point out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

inline std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) out += ",";
    out += to_string(p[k]);
  }
  return out + ")";
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

}  // namespace epicore
