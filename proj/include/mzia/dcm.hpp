// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mzia/bound.hpp"
#include "mzia/linear.hpp"
#include "mzia/rational.hpp"

namespace mzia {

// ── Zone constraints (exchange format) ──────────────────────────────────────

/// bound ≺ var  (strictness carried by the bound).
struct LowerBoundC {
  std::string var;
  Bound bound;
  friend bool operator==(const LowerBoundC&, const LowerBoundC&) = default;
};

/// var ≺ bound.
struct UpperBoundC {
  std::string var;
  Bound bound;
  friend bool operator==(const UpperBoundC&, const UpperBoundC&) = default;
};

/// lower ≺ coeffA·varA − coeffB·varB ≺ upper; either side may be infinite.
/// Representable in a matrix with rates k only when coeffA/k(varB) = coeffB/k(varA).
struct RelativeC {
  std::string varA, varB;
  Rational coeffA, coeffB;
  // lower.value() ≺ form, strict iff lower.strict(); an infinite lower means
  // "no lower bound".  upper reads the usual way: form ≺ upper.
  Bound lower, upper;
  friend bool operator==(const RelativeC&, const RelativeC&) = default;
};

using ZoneConstraint = std::variant<LowerBoundC, UpperBoundC, RelativeC>;

// ── Difference constraint matrix ────────────────────────────────────────────
//
// A zone over variables v_1..v_n evolving with strictly positive rational
// rates k_1..k_n, plus the constant reference v_0 = 0 with k_0 = 1.  The cell
// in row i, column j bounds the rate-scaled difference
//
//     k_j·v_i − k_i·v_j  ≺  m[i][j]
//
// which is invariant under flow at the given rates (both products grow with
// slope k_i·k_j).  Substituting u_i = v_i / k_i turns the matrix into an
// ordinary difference bound matrix over unit-rate variables, which is why the
// usual DBM toolkit (shortest-path closure, entrywise meets and comparisons,
// row/column projection) carries over once every constant is rescaled.  The
// closure's derivation rule, combining cells (i,k) and (k,j) into
//
//     ( k_j·m[i][k] + k_i·m[k][j] ) / k_k ,
//
// is exactly the shortest-path triangle step under that substitution.
//
// All instances that leave this class are canonical (closed) and flag
// emptiness; operations are value-producing and never mutate in place.
class Dcm {
 public:
  /// No constraints at all.
  static Dcm universal(std::vector<std::string> vars, std::map<std::string, Rational> rates);

  /// Conjunction of the given constraints, canonicalized.  Contradictions
  /// yield an empty matrix, not an error; unknown variables and non-positive
  /// rates are structural errors.
  static Dcm from_constraints(std::vector<std::string> vars,
                              std::map<std::string, Rational> rates,
                              const std::vector<ZoneConstraint>& cs);

  // ── observers ──
  const std::vector<std::string>& vars() const { return vars_; }
  const Rational& rate(const std::string& var) const;
  const std::map<std::string, Rational> rates() const;
  std::size_t dim() const { return vars_.size() + 1; }  // matrix side, reference included
  /// Cell (i, j) with 0 the reference row/column.
  const Bound& entry(std::size_t i, std::size_t j) const;
  /// Matrix index of a variable (1-based; 0 is the reference).
  std::size_t index_of(const std::string& var) const;
  bool is_empty() const { return empty_; }
  bool same_context(const Dcm& other) const;  // same vars in same order, same rates

  /// Entrywise equality of canonical forms (empties with equal context are equal).
  bool operator==(const Dcm& other) const;

  // ── operations ──
  /// Shortest-path closure; idempotent.  Detects emptiness via the diagonal.
  Dcm canonicalized() const;
  /// Entrywise meet, then closure.  Contexts must match.
  Dcm intersect(const Dcm& other) const;
  /// Arbitrary time elapse: drop every upper bound against the reference.
  Dcm elapsed() const;
  /// Assign vars in `lambda` to the values in `xi`, switching to `newRates`.
  /// Every variable whose rate changes must be in lambda.
  Dcm reset(const std::vector<std::string>& lambda, const std::map<std::string, Rational>& xi,
            const std::map<std::string, Rational>& newRates) const;
  /// Existential projection: drop one variable.
  Dcm project(const std::string& var) const;
  /// Keep only the named variables (in their current order).
  Dcm project_to(const std::vector<std::string>& keep) const;
  /// Is `other` a subset of this zone?  Entrywise when the rate vectors agree,
  /// otherwise by exact linear entailment.
  bool includes(const Dcm& other) const;

  // ── conversions ──
  /// Structured constraint list; rebuilding from it reproduces this matrix.
  std::vector<ZoneConstraint> zone_constraints() const;
  /// All finite cells as plain linear constraints.
  LinearSystem to_linear() const;
  /// Direct semantic membership test (no closure involved).
  bool contains_point(const std::map<std::string, Rational>& p) const;

  // ── rendering ──
  /// Table with one (a, b, c, ≺) cell per entry, a the column rate and b the
  /// row rate; reference row/column first.
  std::string table(const std::map<std::string, std::string>& display = {}) const;
  /// Conjunction such as "620 <= x <= 920 & y = 700 & 4600 <= 30x - 20y <= 13600".
  std::string zone_string(const std::map<std::string, std::string>& display = {}) const;

 private:
  Dcm() = default;

  Bound& cell(std::size_t i, std::size_t j) { return m_[i * dim() + j]; }
  const Bound& cell(std::size_t i, std::size_t j) const { return m_[i * dim() + j]; }
  const Rational& rate_at(std::size_t i) const;  // index 0 -> 1
  void close();                                  // in-place closure + emptiness detection
  void meet_cell(std::size_t i, std::size_t j, const Bound& b);

  std::vector<std::string> vars_;
  std::vector<Rational> rates_;  // aligned with vars_
  std::vector<Bound> m_;         // dim() x dim(), row-major
  bool empty_ = false;
};

}  // namespace mzia
