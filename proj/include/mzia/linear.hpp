// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mzia/rational.hpp"

namespace mzia {

using Point = std::map<std::string, Rational>;

// ── Linear constraint ───────────────────────────────────────────────────────

// Σ coeffs[v]·v ≺ bound with ≺ ∈ {<=, <}.  Coefficient maps never store zeros.
struct LinearConstraint {
  std::map<std::string, Rational> coeffs;
  Rational bound;
  bool strict = false;

  /// Value of the linear form at a point; every constrained variable must be bound.
  Rational evaluate(const Point& p) const;

  /// Does the point satisfy the constraint?
  bool admits(const Point& p) const;

  /// Logical negation: ¬(e <= b) is -e < -b, ¬(e < b) is -e <= -b.
  LinearConstraint negated() const;

  /// Fold one variable to a fixed value (no-op if the variable is absent).
  LinearConstraint substituted(const std::string& var, const Rational& value) const;

  std::string str() const;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// Convenience constructors.
LinearConstraint lin_leq(std::map<std::string, Rational> coeffs, Rational bound);
LinearConstraint lin_less(std::map<std::string, Rational> coeffs, Rational bound);

// ── Linear system ───────────────────────────────────────────────────────────

// Conjunction of linear constraints over named rational variables, decided
// exactly by Fourier-Motzkin elimination.  Intended for the handful-of-variables
// systems that zone and schema reasoning produce; elimination is exponential in
// principle and entirely comfortable at that scale.
class LinearSystem {
 public:
  LinearSystem() = default;

  void add(LinearConstraint c);
  void add_equal(std::map<std::string, Rational> coeffs, Rational bound);

  const std::vector<LinearConstraint>& constraints() const { return cs_; }
  std::set<std::string> variables() const;
  bool trivially_false() const { return contradictory_; }

  bool feasible() const;

  /// Does every point of this system satisfy c?
  bool entails(const LinearConstraint& c) const;
  bool entails_all(const LinearSystem& other) const;

  /// Fourier-Motzkin elimination of one variable (exact projection).
  LinearSystem eliminated(const std::string& var) const;
  LinearSystem eliminated_all(const std::set<std::string>& vars) const;

  /// Fold a variable to a fixed value everywhere.
  LinearSystem substituted(const std::string& var, const Rational& value) const;

  bool admits(const Point& p) const;

  /// An exact satisfying point (values only for constrained variables),
  /// or nullopt when infeasible.
  std::optional<Point> sample() const;

  /// Union of both constraint lists.
  LinearSystem intersect(const LinearSystem& other) const;

 private:
  std::vector<LinearConstraint> cs_;
  bool contradictory_ = false;
};

// ── Coverage by a union of systems ──────────────────────────────────────────

/// Is the point set of `zone` contained in the union of `cover`?  Decided
/// exactly by constraint splitting; when the answer is no and `cex` is given,
/// a witness point of zone ∖ ⋃cover is stored there.
bool covered_by_union(const LinearSystem& zone, const std::vector<LinearSystem>& cover,
                      Point* cex = nullptr);

}  // namespace mzia
