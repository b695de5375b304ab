// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/linear.hpp"

#include <algorithm>
#include <sstream>

#include "mzia/errors.hpp"

namespace mzia {

// ── LinearConstraint ────────────────────────────────────────────────────────

Rational LinearConstraint::evaluate(const Point& p) const {
  Rational sum = 0;
  for (const auto& [var, coeff] : coeffs) {
    auto it = p.find(var);
    if (it == p.end()) throw VariableError("unbound variable in constraint: " + var);
    sum += coeff * it->second;
  }
  return sum;
}

bool LinearConstraint::admits(const Point& p) const {
  Rational v = evaluate(p);
  return strict ? v < bound : v <= bound;
}

LinearConstraint LinearConstraint::negated() const {
  LinearConstraint n;
  for (const auto& [var, coeff] : coeffs) n.coeffs[var] = -coeff;
  n.bound = -bound;
  n.strict = !strict;
  return n;
}

LinearConstraint LinearConstraint::substituted(const std::string& var, const Rational& value) const {
  auto it = coeffs.find(var);
  if (it == coeffs.end()) return *this;
  LinearConstraint r = *this;
  r.bound -= it->second * value;
  r.coeffs.erase(var);
  return r;
}

std::string LinearConstraint::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [var, coeff] : coeffs) {
    if (!first) out << " + ";
    out << to_string(coeff) << "*" << var;
    first = false;
  }
  if (first) out << "0";
  out << (strict ? " < " : " <= ") << to_string(bound);
  return out.str();
}

LinearConstraint lin_leq(std::map<std::string, Rational> coeffs, Rational bound) {
  LinearConstraint c;
  c.coeffs = std::move(coeffs);
  c.bound = std::move(bound);
  c.strict = false;
  std::erase_if(c.coeffs, [](const auto& kv) { return kv.second == 0; });
  return c;
}

LinearConstraint lin_less(std::map<std::string, Rational> coeffs, Rational bound) {
  LinearConstraint c = lin_leq(std::move(coeffs), std::move(bound));
  c.strict = true;
  return c;
}

// ── LinearSystem ────────────────────────────────────────────────────────────

void LinearSystem::add(LinearConstraint c) {
  std::erase_if(c.coeffs, [](const auto& kv) { return kv.second == 0; });
  if (c.coeffs.empty()) {
    // Constant constraint 0 ≺ bound: either vacuous or contradictory.
    bool ok = c.strict ? (c.bound > 0) : (c.bound >= 0);
    if (!ok) contradictory_ = true;
    return;
  }
  cs_.push_back(std::move(c));
}

void LinearSystem::add_equal(std::map<std::string, Rational> coeffs, Rational bound) {
  add(lin_leq(coeffs, bound));
  std::map<std::string, Rational> neg;
  for (const auto& [var, coeff] : coeffs) neg[var] = -coeff;
  add(lin_leq(std::move(neg), -bound));
}

std::set<std::string> LinearSystem::variables() const {
  std::set<std::string> vs;
  for (const auto& c : cs_)
    for (const auto& [var, coeff] : c.coeffs) vs.insert(var);
  return vs;
}

LinearSystem LinearSystem::eliminated(const std::string& var) const {
  LinearSystem out;
  out.contradictory_ = contradictory_;
  std::vector<const LinearConstraint*> uppers, lowers;
  for (const auto& c : cs_) {
    auto it = c.coeffs.find(var);
    if (it == c.coeffs.end()) {
      out.add(c);
    } else if (it->second > 0) {
      uppers.push_back(&c);  // var <= (bound - rest)/coeff
    } else {
      lowers.push_back(&c);  // var >= (bound - rest)/coeff  (coeff < 0)
    }
  }
  for (const auto* up : uppers) {
    Rational a = up->coeffs.at(var);
    for (const auto* lo : lowers) {
      Rational b = -lo->coeffs.at(var);  // > 0
      // b·(up) + a·(lo) cancels var.
      LinearConstraint combined;
      combined.strict = up->strict || lo->strict;
      combined.bound = b * up->bound + a * lo->bound;
      for (const auto& [v, c] : up->coeffs)
        if (v != var) combined.coeffs[v] += b * c;
      for (const auto& [v, c] : lo->coeffs)
        if (v != var) combined.coeffs[v] += a * c;
      out.add(std::move(combined));
    }
  }
  return out;
}

LinearSystem LinearSystem::eliminated_all(const std::set<std::string>& vars) const {
  LinearSystem cur = *this;
  for (const auto& v : vars) cur = cur.eliminated(v);
  return cur;
}

LinearSystem LinearSystem::substituted(const std::string& var, const Rational& value) const {
  LinearSystem out;
  out.contradictory_ = contradictory_;
  for (const auto& c : cs_) out.add(c.substituted(var, value));
  return out;
}

bool LinearSystem::feasible() const {
  if (contradictory_) return false;
  LinearSystem cur = *this;
  for (const auto& v : variables()) {
    cur = cur.eliminated(v);
    if (cur.contradictory_) return false;
  }
  return !cur.contradictory_;
}

bool LinearSystem::entails(const LinearConstraint& c) const {
  LinearSystem test = *this;
  test.add(c.negated());
  return !test.feasible();
}

bool LinearSystem::entails_all(const LinearSystem& other) const {
  if (other.contradictory_) return !feasible();
  for (const auto& c : other.cs_)
    if (!entails(c)) return false;
  return true;
}

bool LinearSystem::admits(const Point& p) const {
  if (contradictory_) return false;
  return std::all_of(cs_.begin(), cs_.end(), [&](const auto& c) { return c.admits(p); });
}

std::optional<Point> LinearSystem::sample() const {
  if (contradictory_) return std::nullopt;
  const std::set<std::string> vs = variables();
  std::vector<std::string> order(vs.begin(), vs.end());

  // Eliminate front to back, keeping each intermediate system.
  std::vector<LinearSystem> stages;  // stages[i] still contains order[i..]
  stages.push_back(*this);
  for (const auto& v : order) {
    if (stages.back().contradictory_) return std::nullopt;
    stages.push_back(stages.back().eliminated(v));
  }
  if (stages.back().contradictory_) return std::nullopt;

  // Back-substitute: choose order[i] from stages[i] with later variables fixed.
  Point chosen;
  for (std::size_t i = order.size(); i-- > 0;) {
    LinearSystem sys = stages[i];
    for (std::size_t j = i + 1; j < order.size(); ++j)
      sys = sys.substituted(order[j], chosen.at(order[j]));

    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& c : sys.cs_) {
      auto it = c.coeffs.find(order[i]);
      if (it == c.coeffs.end()) continue;
      Rational limit = c.bound / it->second;
      if (it->second > 0) {
        if (!hi || limit < *hi || (limit == *hi && c.strict)) {
          hi = limit;
          hi_strict = c.strict;
        }
      } else {
        if (!lo || limit > *lo || (limit == *lo && c.strict)) {
          lo = limit;
          lo_strict = c.strict;
        }
      }
    }
    Rational v;
    if (lo && hi) {
      if (*lo == *hi) {
        v = *lo;  // feasibility guarantees neither side is strict here
      } else {
        v = (*lo + *hi) / 2;
      }
    } else if (lo) {
      v = lo_strict ? *lo + 1 : *lo;
    } else if (hi) {
      v = hi_strict ? *hi - 1 : *hi;
    } else {
      v = 0;
    }
    chosen[order[i]] = v;
  }
  return chosen;
}

LinearSystem LinearSystem::intersect(const LinearSystem& other) const {
  LinearSystem out = *this;
  out.contradictory_ = contradictory_ || other.contradictory_;
  for (const auto& c : other.cs_) out.add(c);
  return out;
}

// ── Coverage ────────────────────────────────────────────────────────────────

bool covered_by_union(const LinearSystem& zone, const std::vector<LinearSystem>& cover,
                      Point* cex) {
  if (!zone.feasible()) return true;
  // Cheap exits first: a single member already containing the zone settles the
  // question, and members disjoint from the zone cannot contribute.  Without
  // the first check the splitting recursion below degenerates on covers made
  // of many pairwise-disjoint pieces (it would thread through all of them).
  for (const auto& m : cover) {  // syntactic containment needs no arithmetic
    if (m.trivially_false()) continue;
    bool subset = std::all_of(m.constraints().begin(), m.constraints().end(),
                              [&](const LinearConstraint& c) {
                                return std::find(zone.constraints().begin(),
                                                 zone.constraints().end(),
                                                 c) != zone.constraints().end();
                              });
    if (subset) return true;
  }
  std::vector<LinearSystem> live;
  live.reserve(cover.size());
  for (const auto& m : cover) {
    if (m.trivially_false()) continue;
    if (zone.entails_all(m)) return true;
    if (zone.intersect(m).feasible()) live.push_back(m);
  }
  if (live.empty()) {
    if (cex) *cex = *zone.sample();
    return false;
  }
  const LinearSystem first = std::move(live.front());
  live.erase(live.begin());
  // zone ⊆ first ∪ rest  iff every piece of zone ∖ first is covered by rest,
  // and zone ∖ first is the union over first's constraints c of zone ∧ ¬c.
  for (const auto& c : first.constraints()) {
    LinearSystem piece = zone;
    piece.add(c.negated());
    if (!covered_by_union(piece, live, cex)) return false;
  }
  return true;
}

}  // namespace mzia
