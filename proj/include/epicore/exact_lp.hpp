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

#include <cstddef>
#include <optional>
#include <vector>

#include "epicore/error.hpp"
#include "epicore/rational.hpp"

namespace epicore {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation;
  Rational rhs;
};

// minimize objective . x  subject to the constraints and x >= 0.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<Rational> objective;  // empty means pure feasibility
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

namespace detail {

// Dense tableau; Bland's rule keeps the method finite under degeneracy.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows, std::vector<Rational>(cols + 1)) {}

  std::vector<Rational>& row(std::size_t r) { return a_[r]; }
  Rational& rhs(std::size_t r) { return a_[r][cols_]; }
  std::vector<std::size_t> basis;

  // Minimizes cost . x over the current basis; `allowed` masks entering columns.
  LpStatus optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    while (true) {
      std::vector<Rational> reduced = reduced_costs(cost);
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && reduced[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return LpStatus::Optimal;
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (a_[r][enter] <= 0) continue;
        Rational ratio = a_[r][cols_] / a_[r][enter];
        if (leave == rows_ || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = a_[r][c];
    for (auto& e : a_[r]) e /= p;
    for (std::size_t k = 0; k < rows_; ++k) {
      if (k == r || a_[k][c] == 0) continue;
      Rational f = a_[k][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (a_[r][j] != 0) a_[k][j] -= f * a_[r][j];
    }
    basis[r] = c;
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational z = 0;
    for (std::size_t r = 0; r < rows_; ++r) z += cost[basis[r]] * a_[r][cols_];
    return z;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  std::size_t rows() const { return rows_; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r][c]; }

 private:
  std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
    std::vector<Rational> out(cost.begin(), cost.end());
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = cost[basis[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (a_[r][j] != 0) out[j] -= cb * a_[r][j];
    }
    return out;
  }

  std::size_t rows_, cols_;
  std::vector<std::vector<Rational>> a_;
};

}  // namespace detail

// Two-phase primal simplex in exact arithmetic.
inline LpResult solve(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  const std::size_t m = lp.constraints.size();
  for (const auto& c : lp.constraints)
    if (c.coefficients.size() != n) throw InvalidInput("constraint width does not match variable count");
  if (!lp.objective.empty() && lp.objective.size() != n) throw InvalidInput("objective width does not match");

  std::size_t slacks = 0, artificials = 0;
  for (const auto& c : lp.constraints) {
    if (c.relation != Relation::Equal) ++slacks;
    bool flip = c.rhs < 0;
    Relation rel = c.relation;
    if (flip && rel != Relation::Equal) rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    if (rel != Relation::LessEqual) ++artificials;
  }
  const std::size_t cols = n + slacks + artificials;
  detail::Tableau t(m, cols);
  t.basis.assign(m, 0);
  std::size_t next_slack = n, next_art = n + slacks;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = lp.constraints[r];
    bool flip = c.rhs < 0;
    Rational sign = flip ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t.row(r)[j] = sign * c.coefficients[j];
    t.rhs(r) = sign * c.rhs;
    Relation rel = c.relation;
    if (flip && rel != Relation::Equal) rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    if (rel == Relation::LessEqual) {
      t.row(r)[next_slack] = 1;
      t.basis[r] = next_slack++;
    } else {
      if (rel == Relation::GreaterEqual) t.row(r)[next_slack++] = -1;
      t.row(r)[next_art] = 1;
      t.basis[r] = next_art++;
    }
  }

  std::vector<bool> allowed(cols, true);
  std::vector<Rational> phase1(cols, Rational(0));
  for (std::size_t j = n + slacks; j < cols; ++j) phase1[j] = 1;
  t.optimize(phase1, allowed);
  LpResult out;
  if (t.objective(phase1) != 0) return out;

  // Drive remaining artificial variables out of the basis.
  for (std::size_t r = 0; r < t.rows();) {
    if (t.basis[r] < n + slacks) {
      ++r;
      continue;
    }
    std::size_t col = n + slacks;
    for (std::size_t j = 0; j < n + slacks; ++j)
      if (t.at(r, j) != 0) {
        col = j;
        break;
      }
    if (col == n + slacks) {
      t.drop_row(r);
    } else {
      t.pivot(r, col);
      ++r;
    }
  }
  for (std::size_t j = n + slacks; j < cols; ++j) allowed[j] = false;

  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t j = 0; j < lp.objective.size(); ++j) phase2[j] = lp.objective[j];
  if (t.optimize(phase2, allowed) == LpStatus::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < t.rows(); ++r)
    if (t.basis[r] < n) out.x[t.basis[r]] = t.at(r, cols);
  out.value = 0;
  for (std::size_t j = 0; j < lp.objective.size(); ++j) out.value += lp.objective[j] * out.x[j];
  return out;
}

// Solves A x = b exactly when the columns of A are linearly independent;
// none when they are dependent or the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_independent(std::vector<std::vector<Rational>> a,
                                                              std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_row_of(cols, rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;  // dependent column
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational piv = a[r][c];
    for (auto& e : a[r]) e /= piv;
    b[r] /= piv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c] == 0) continue;
      Rational f = a[k][c];
      for (std::size_t j = 0; j < cols; ++j) a[k][j] -= f * a[r][j];
      b[k] -= f * b[r];
    }
    pivot_row_of[c] = r++;
  }
  for (std::size_t k = r; k < rows; ++k)
    if (b[k] != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t c = 0; c < cols; ++c) x[c] = b[pivot_row_of[c]];
  return x;
}

// Rank by exact elimination.
inline std::size_t rank(std::vector<std::vector<Rational>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t k = r + 1; k < rows; ++k) {
      if (a[k][c] == 0) continue;
      Rational f = a[k][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[k][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace epicore
