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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "epicore/formula.hpp"

namespace epicore {

// A large formula set described by a membership predicate, so that knowledge
// sets the size of At1 never have to be listed.
class SequentContext {
 public:
  virtual ~SequentContext() = default;
  virtual bool contains(const Formula& f) const = 0;
  virtual bool contains_negation_of(const Formula& f) const { return contains(negation(f)); }
  // Two contexts with equal keys denote the same set.
  virtual const std::string& key() const = 0;
};

using ContextPtr = std::shared_ptr<const SequentContext>;

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->key() == b->key();
}

// Finite set of formulas: an optional symbolic context plus explicit members.
// Explicit members that the context already contains are dropped, so equal
// sets have equal representations.
class FormulaSet {
 public:
  using Members = boost::container::small_vector<Formula, 2>;

  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> members) : FormulaSet(Members(members)) {}
  explicit FormulaSet(const std::vector<Formula>& members, ContextPtr context = nullptr)
      : FormulaSet(Members(members.begin(), members.end()), std::move(context)) {}
  explicit FormulaSet(Members members, ContextPtr context = nullptr)
      : context_(std::move(context)), members_(std::move(members)) {
    if (!std::is_sorted(members_.begin(), members_.end())) std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (context_)
      members_.erase(std::remove_if(members_.begin(), members_.end(),
                                    [&](const Formula& f) { return context_->contains(f); }),
                     members_.end());
  }
  static FormulaSet of_context(ContextPtr context) {
    FormulaSet s;
    s.context_ = std::move(context);
    return s;
  }

  const ContextPtr& context() const { return context_; }
  const Members& members() const { return members_; }
  bool symbolic() const { return context_ != nullptr; }
  bool empty() const { return !context_ && members_.empty(); }
  // Number of elements; only meaningful for explicit sets.
  std::size_t size() const { return members_.size(); }

  bool contains_explicit(const Formula& f) const {
    return std::binary_search(members_.begin(), members_.end(), f);
  }
  bool contains(const Formula& f) const {
    return contains_explicit(f) || (context_ && context_->contains(f));
  }

  bool contains_negation_of(const Formula& f) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), f, [](const Formula& e, const Formula& g) {
      if (e.kind() != Connective::Not) return e.kind() < Connective::Not;
      return compare(e.operand(), g) < 0;
    });
    if (it != members_.end() && it->kind() == Connective::Not && it->operand() == f) return true;
    return context_ && context_->contains_negation_of(f);
  }

  // (this minus `remove`) plus `add` equals target; either may be null.
  bool edit_equals(const Formula* add, const Formula* remove, const FormulaSet& target) const {
    if (!same_context(context_, target.context_)) return false;
    if (remove && context_ && context_->contains(*remove)) return false;
    auto in_edit = [&](const Formula& e) {
      if (add && e == *add) return true;
      if (remove && e == *remove) return false;
      return contains_explicit(e);
    };
    std::size_t size = members_.size();
    bool removed = remove && contains_explicit(*remove);
    if (removed) --size;
    if (add && !(context_ && context_->contains(*add))) {
      bool present = contains_explicit(*add) && !(removed && *add == *remove);
      if (!present) ++size;
    }
    if (size != target.members_.size()) return false;
    return std::all_of(target.members_.begin(), target.members_.end(), in_edit);
  }

  FormulaSet with(const Formula& f) const {
    if (contains(f)) return *this;
    FormulaSet out = *this;
    out.members_.insert(std::lower_bound(out.members_.begin(), out.members_.end(), f), f);
    return out;
  }
  FormulaSet with(const FormulaSet& other) const;
  // None when f is only known through the context and cannot be removed.
  std::optional<FormulaSet> without(const Formula& f) const {
    if (context_ && context_->contains(f)) return std::nullopt;
    FormulaSet out = *this;
    auto it = std::lower_bound(out.members_.begin(), out.members_.end(), f);
    if (it != out.members_.end() && *it == f) out.members_.erase(it);
    return out;
  }

  bool subset_of(const FormulaSet& other) const {
    if (context_ && !same_context(context_, other.context_)) return false;
    return std::all_of(members_.begin(), members_.end(), [&](const Formula& f) { return other.contains(f); });
  }

  friend bool operator==(const FormulaSet& a, const FormulaSet& b) {
    return same_context(a.context_, b.context_) && a.members_.size() == b.members_.size() &&
           std::equal(a.members_.begin(), a.members_.end(), b.members_.begin());
  }

 private:
  ContextPtr context_;
  Members members_;
};

// Union; the two contexts must agree (or one side must have none).
inline FormulaSet FormulaSet::with(const FormulaSet& other) const {
  if (context_ && other.context_ && !same_context(context_, other.context_))
    throw InvalidInput("cannot join formula sets over different contexts");
  Members all = members_;
  all.insert(all.end(), other.members_.begin(), other.members_.end());
  return FormulaSet(std::move(all), context_ ? context_ : other.context_);
}

using Prefix = boost::container::small_vector<Player, 2>;

// B_e[ante -> succ]; an empty prefix is a plain sequent.
struct ThoughtSequent {
  Prefix prefix;
  FormulaSet ante;
  FormulaSet succ;
  friend bool operator==(const ThoughtSequent&, const ThoughtSequent&) = default;
};

inline std::string to_string(const FormulaSet& s) {
  std::string out;
  if (s.context()) out = "<" + s.context()->key() + ">";
  for (const auto& f : s.members()) {
    if (!out.empty()) out += ", ";
    out += to_string(f);
  }
  return out;
}

inline std::string to_string(const ThoughtSequent& t) {
  std::string e;
  for (std::size_t k = 0; k < t.prefix.size(); ++k) e += (k ? "," : "") + std::to_string(t.prefix[k]);
  return "B_{" + e + "}[" + to_string(t.ante) + " -> " + to_string(t.succ) + "]";
}

}  // namespace epicore
