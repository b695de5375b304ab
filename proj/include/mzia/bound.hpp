// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "mzia/rational.hpp"

namespace mzia {

// One-sided bound "expr ≺ c" with ≺ either <= (non-strict) or < (strict),
// or the absent bound +∞.  Bounds are totally ordered by permissiveness:
//
//   Finite(c, <) comes before Finite(c, <=) comes before Finite(c', *) for c < c',
//   and Infinity is the largest element.
//
// "Smaller" therefore always means "tighter constraint", and the meet of two
// bounds is their minimum.
class Bound {
 public:
  Bound() : inf_(true) {}  // +∞

  static Bound infinity() { return Bound(); }
  static Bound leq(Rational v) { return Bound(std::move(v), false); }
  static Bound less(Rational v) { return Bound(std::move(v), true); }
  static Bound finite(Rational v, bool strict) { return Bound(std::move(v), strict); }

  bool infinite() const { return inf_; }
  bool strict() const { return !inf_ && strict_; }
  const Rational& value() const { return value_; }  // only meaningful when finite

  /// Does lhs satisfy "lhs ≺ bound"?  (Everything satisfies +∞.)
  bool admits(const Rational& lhs) const {
    if (inf_) return true;
    return strict_ ? lhs < value_ : lhs <= value_;
  }

  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_ && a.strict_ == b.strict_;
  }
  friend bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }
  friend bool operator<(const Bound& a, const Bound& b) {
    if (b.inf_) return !a.inf_;
    if (a.inf_) return false;
    if (a.value_ != b.value_) return a.value_ < b.value_;
    return a.strict_ && !b.strict_;
  }
  friend bool operator<=(const Bound& a, const Bound& b) { return a < b || a == b; }

  friend const Bound& min(const Bound& a, const Bound& b) { return b < a ? b : a; }

  /// "c" / "c (strict)" / "inf" -- used in diagnostics; tables render their own form.
  std::string str() const;

 private:
  Bound(Rational v, bool strict) : inf_(false), strict_(strict), value_(std::move(v)) {}

  bool inf_;
  bool strict_ = false;
  Rational value_;
};

}  // namespace mzia
