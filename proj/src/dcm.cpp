// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/dcm.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mzia/errors.hpp"

namespace mzia {

namespace {
const Rational kUnit = 1;
const Bound kZero = Bound::leq(0);
}  // namespace

// ── construction ────────────────────────────────────────────────────────────

Dcm Dcm::universal(std::vector<std::string> vars, std::map<std::string, Rational> rates) {
  Dcm d;
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second) throw VariableError("duplicate variable: " + v);
    auto it = rates.find(v);
    if (it == rates.end()) throw VariableError("missing rate for variable: " + v);
    if (it->second <= 0) throw RateError("non-positive rate for variable: " + v);
  }
  if (rates.size() != vars.size()) throw VariableError("rate given for undeclared variable");
  d.vars_ = std::move(vars);
  d.rates_.reserve(d.vars_.size());
  for (const auto& v : d.vars_) d.rates_.push_back(rates.at(v));
  d.m_.assign(d.dim() * d.dim(), Bound::infinity());
  for (std::size_t i = 0; i < d.dim(); ++i) d.cell(i, i) = kZero;
  return d;
}

Dcm Dcm::from_constraints(std::vector<std::string> vars, std::map<std::string, Rational> rates,
                          const std::vector<ZoneConstraint>& cs) {
  Dcm d = universal(std::move(vars), std::move(rates));
  for (const auto& zc : cs) {
    if (const auto* lo = std::get_if<LowerBoundC>(&zc)) {
      if (lo->bound.infinite()) continue;
      std::size_t i = d.index_of(lo->var);
      d.meet_cell(0, i, Bound::finite(-lo->bound.value(), lo->bound.strict()));
    } else if (const auto* up = std::get_if<UpperBoundC>(&zc)) {
      if (up->bound.infinite()) continue;
      std::size_t i = d.index_of(up->var);
      d.meet_cell(i, 0, up->bound);
    } else {
      const auto& rel = std::get<RelativeC>(zc);
      std::size_t a = d.index_of(rel.varA);
      std::size_t b = d.index_of(rel.varB);
      if (a == b) throw VariableError("relative constraint over a single variable: " + rel.varA);
      if (rel.coeffA <= 0 || rel.coeffB <= 0)
        throw ContextError("relative constraint needs positive coefficients");
      // coeffA·vA − coeffB·vB must be a positive multiple of k_B·vA − k_A·vB.
      Rational tA = rel.coeffA / d.rate_at(b);
      Rational tB = rel.coeffB / d.rate_at(a);
      if (tA != tB)
        throw ContextError("relative constraint coefficients are not proportional to the rates");
      if (!rel.upper.infinite())
        d.meet_cell(a, b, Bound::finite(rel.upper.value() / tA, rel.upper.strict()));
      if (!rel.lower.infinite())
        d.meet_cell(b, a, Bound::finite(-rel.lower.value() / tA, rel.lower.strict()));
    }
  }
  d.close();
  return d;
}

// ── observers ───────────────────────────────────────────────────────────────

const Rational& Dcm::rate_at(std::size_t i) const { return i == 0 ? kUnit : rates_[i - 1]; }

const Rational& Dcm::rate(const std::string& var) const { return rate_at(index_of(var)); }

const std::map<std::string, Rational> Dcm::rates() const {
  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) out[vars_[i]] = rates_[i];
  return out;
}

const Bound& Dcm::entry(std::size_t i, std::size_t j) const {
  if (i >= dim() || j >= dim()) throw Error("matrix index out of range");
  return cell(i, j);
}

std::size_t Dcm::index_of(const std::string& var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == var) return i + 1;
  throw VariableError("unknown variable: " + var);
}

bool Dcm::same_context(const Dcm& other) const {
  return vars_ == other.vars_ && rates_ == other.rates_;
}

bool Dcm::operator==(const Dcm& other) const {
  if (!same_context(other)) return false;
  if (empty_ || other.empty_) return empty_ == other.empty_;
  return m_ == other.m_;
}

// ── closure ─────────────────────────────────────────────────────────────────

void Dcm::meet_cell(std::size_t i, std::size_t j, const Bound& b) {
  if (b < cell(i, j)) cell(i, j) = b;
}

void Dcm::close() {
  if (empty_) return;
  const std::size_t n = dim();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Bound& ik = cell(i, k);
      if (ik.infinite() || i == k) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const Bound& kj = cell(k, j);
        if (kj.infinite()) continue;
        Rational v = (rate_at(j) * ik.value() + rate_at(i) * kj.value()) / rate_at(k);
        meet_cell(i, j, Bound::finite(std::move(v), ik.strict() || kj.strict()));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cell(i, i) < kZero) {
      empty_ = true;
      return;
    }
  }
}

// ── operations ──────────────────────────────────────────────────────────────

Dcm Dcm::canonicalized() const {
  Dcm r = *this;
  r.close();
  return r;
}

Dcm Dcm::intersect(const Dcm& other) const {
  if (!same_context(other)) throw ContextError("intersect over mismatched variables or rates");
  if (empty_) return *this;
  Dcm r = *this;
  if (other.empty_) {
    r.empty_ = true;
    return r;
  }
  for (std::size_t i = 0; i < m_.size(); ++i) r.m_[i] = min(r.m_[i], other.m_[i]);
  r.close();
  return r;
}

Dcm Dcm::elapsed() const {
  Dcm r = *this;
  if (empty_) return r;
  for (std::size_t i = 1; i < dim(); ++i) r.cell(i, 0) = Bound::infinity();
  r.close();  // no-op by construction, kept for safety
  return r;
}

Dcm Dcm::reset(const std::vector<std::string>& lambda, const std::map<std::string, Rational>& xi,
               const std::map<std::string, Rational>& newRates) const {
  std::set<std::size_t> reset_ix;
  for (const auto& v : lambda) {
    if (!reset_ix.insert(index_of(v)).second) throw VariableError("duplicate reset variable: " + v);
    if (!xi.count(v)) throw VariableError("missing reset value for: " + v);
  }
  if (xi.size() != lambda.size()) throw VariableError("reset value for a variable not being reset");
  if (newRates.size() != vars_.size()) throw VariableError("new rate vector over wrong variables");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = newRates.find(vars_[i]);
    if (it == newRates.end()) throw VariableError("missing new rate for variable: " + vars_[i]);
    if (it->second <= 0) throw RateError("non-positive rate for variable: " + vars_[i]);
    if (it->second != rates_[i] && !reset_ix.count(i + 1))
      throw RateError("rate of " + vars_[i] + " changes but the variable is not reset");
  }

  Dcm r = *this;
  for (std::size_t i = 0; i < vars_.size(); ++i) r.rates_[i] = newRates.at(vars_[i]);
  if (empty_) return r;

  // Reset variables become exact points; every cell touching one is
  // rebuilt by chaining through the reference column.
  for (std::size_t v : reset_ix) {
    const Rational& val = xi.at(vars_[v - 1]);
    r.cell(v, 0) = Bound::leq(val);
    r.cell(0, v) = Bound::leq(-val);
  }
  for (std::size_t v : reset_ix) {
    const Rational& val = xi.at(vars_[v - 1]);
    for (std::size_t u = 1; u < dim(); ++u) {
      if (u == v) continue;
      if (reset_ix.count(u)) {
        const Rational& uval = xi.at(vars_[u - 1]);
        r.cell(u, v) = Bound::leq(r.rate_at(v) * uval - r.rate_at(u) * val);
        continue;
      }
      const Bound& u_hi = r.cell(u, 0);
      r.cell(u, v) = u_hi.infinite()
                         ? Bound::infinity()
                         : Bound::finite(r.rate_at(v) * u_hi.value() - r.rate_at(u) * val,
                                         u_hi.strict());
      const Bound& u_lo = r.cell(0, u);
      r.cell(v, u) = u_lo.infinite()
                         ? Bound::infinity()
                         : Bound::finite(r.rate_at(u) * val + r.rate_at(v) * u_lo.value(),
                                         u_lo.strict());
    }
  }
  r.close();
  return r;
}

Dcm Dcm::project(const std::string& var) const {
  std::size_t drop = index_of(var);
  Dcm r;
  r.empty_ = empty_;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i + 1 == drop) continue;
    r.vars_.push_back(vars_[i]);
    r.rates_.push_back(rates_[i]);
  }
  r.m_.assign(r.dim() * r.dim(), Bound::infinity());
  std::size_t ri = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i == drop) continue;
    std::size_t rj = 0;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (j == drop) continue;
      r.cell(ri, rj) = cell(i, j);
      ++rj;
    }
    ++ri;
  }
  return r;  // dropping a row/column of a closed matrix is already closed
}

Dcm Dcm::project_to(const std::vector<std::string>& keep) const {
  std::set<std::string> keep_set(keep.begin(), keep.end());
  Dcm r = *this;
  for (const auto& v : vars_)
    if (!keep_set.count(v)) r = r.project(v);
  return r;
}

bool Dcm::includes(const Dcm& other) const {
  if (vars_ != other.vars_) throw ContextError("inclusion check over mismatched variables");
  if (other.empty_) return true;
  if (empty_) return false;
  if (rates_ == other.rates_) {
    for (std::size_t i = 0; i < m_.size(); ++i)
      if (!(other.m_[i] <= m_[i])) return false;
    return true;
  }
  // Different rate vectors: the cells talk about different linear forms, so
  // decide entailment of every constraint of this zone from the other's cells.
  LinearSystem sys = other.to_linear();
  return sys.entails_all(to_linear());
}

// ── conversions ─────────────────────────────────────────────────────────────

LinearSystem Dcm::to_linear() const {
  LinearSystem sys;
  if (empty_) {
    sys.add(lin_less({}, 0));  // unsatisfiable marker
    return sys;
  }
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      if (i == j || cell(i, j).infinite()) continue;
      std::map<std::string, Rational> coeffs;
      if (i > 0) coeffs[vars_[i - 1]] += rate_at(j);
      if (j > 0) coeffs[vars_[j - 1]] -= rate_at(i);
      LinearConstraint c;
      c.coeffs = std::move(coeffs);
      c.bound = cell(i, j).value();
      c.strict = cell(i, j).strict();
      std::erase_if(c.coeffs, [](const auto& kv) { return kv.second == 0; });
      sys.add(std::move(c));
    }
  }
  return sys;
}

bool Dcm::contains_point(const std::map<std::string, Rational>& p) const {
  if (empty_) return false;
  for (const auto& v : vars_)
    if (!p.count(v)) throw VariableError("point does not bind variable: " + v);
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      if (i == j || cell(i, j).infinite()) continue;
      Rational vi = i == 0 ? Rational(0) : p.at(vars_[i - 1]);
      Rational vj = j == 0 ? Rational(0) : p.at(vars_[j - 1]);
      if (!cell(i, j).admits(rate_at(j) * vi - rate_at(i) * vj)) return false;
    }
  }
  return true;
}

namespace {

bool point_cells(const Bound& lo, const Bound& hi) {
  return !lo.infinite() && !hi.infinite() && !lo.strict() && !hi.strict() &&
         hi.value() == -lo.value();
}

}  // namespace

std::vector<ZoneConstraint> Dcm::zone_constraints() const {
  if (empty_) throw Error("zone_constraints on an empty matrix");
  std::vector<ZoneConstraint> out;
  for (std::size_t i = 1; i < dim(); ++i) {
    const Bound& lo = cell(0, i);
    const Bound& hi = cell(i, 0);
    if (!lo.infinite())
      out.push_back(LowerBoundC{vars_[i - 1], Bound::finite(-lo.value(), lo.strict())});
    if (!hi.infinite()) out.push_back(UpperBoundC{vars_[i - 1], hi});
  }
  for (std::size_t i = 1; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (cell(i, j).infinite() && cell(j, i).infinite()) continue;
      const bool pi = point_cells(cell(0, i), cell(i, 0));
      const bool pj = point_cells(cell(0, j), cell(j, 0));
      if (pi && pj) continue;  // both endpoints fixed: the pair cell is implied by them
      // Orient the difference with the still-varying side first; a fixed
      // variable reads as the band's offset.
      std::size_t a = i, b = j;
      if (pi && !pj) std::swap(a, b);
      const Bound& up = cell(a, b);
      const Bound& dn = cell(b, a);
      RelativeC rel;
      rel.varA = vars_[a - 1];
      rel.varB = vars_[b - 1];
      rel.coeffA = rate_at(b);
      rel.coeffB = rate_at(a);
      rel.upper = up;
      rel.lower = dn.infinite() ? Bound::infinity() : Bound::finite(-dn.value(), dn.strict());
      out.push_back(std::move(rel));
    }
  }
  return out;
}

// ── rendering ───────────────────────────────────────────────────────────────

namespace {

std::string shown(const std::map<std::string, std::string>& display, const std::string& var) {
  auto it = display.find(var);
  return it == display.end() ? var : it->second;
}

std::string coeff_var(const Rational& coeff, const std::string& var) {
  if (coeff == 1) return var;
  return to_string(coeff) + var;
}

}  // namespace

std::string Dcm::table(const std::map<std::string, std::string>& display) const {
  if (empty_) return "empty\n";
  std::vector<std::string> names{"x0"};
  for (const auto& v : vars_) names.push_back(shown(display, v));

  std::vector<std::vector<std::string>> rows;
  rows.push_back({""});
  for (const auto& n : names) rows.front().push_back(n);
  for (std::size_t i = 0; i < dim(); ++i) {
    std::vector<std::string> row{names[i]};
    for (std::size_t j = 0; j < dim(); ++j) {
      const Bound& b = cell(i, j);
      std::string c = b.infinite() ? "inf" : to_string(b.value());
      row.push_back("(" + to_string(rate_at(j)) + ", " + to_string(rate_at(i)) + ", " + c + ", " +
                    (b.strict() ? "<" : "<=") + ")");
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(dim() + 1, 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c] << std::string(width[c] - row[c].size(), ' ');
      out << (c + 1 < row.size() ? "  " : "");
    }
    out << "\n";
  }
  return out.str();
}

std::string Dcm::zone_string(const std::map<std::string, std::string>& display) const {
  if (empty_) return "false";
  std::vector<std::string> parts;
  auto side = [](bool strict) { return strict ? " < " : " <= "; };

  for (std::size_t i = 1; i < dim(); ++i) {
    const Bound& lo = cell(0, i);
    const Bound& hi = cell(i, 0);
    std::string name = shown(display, vars_[i - 1]);
    if (point_cells(lo, hi)) {
      parts.push_back(name + " = " + to_string(hi.value()));
    } else if (!lo.infinite() && !hi.infinite()) {
      parts.push_back(to_string(-lo.value()) + side(lo.strict()) + name + side(hi.strict()) +
                      to_string(hi.value()));
    } else if (!hi.infinite()) {
      parts.push_back(name + side(hi.strict()) + to_string(hi.value()));
    } else if (!lo.infinite()) {
      parts.push_back(to_string(-lo.value()) + side(lo.strict()) + name);
    }
  }
  for (std::size_t i = 1; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (cell(i, j).infinite() && cell(j, i).infinite()) continue;
      const bool pi = point_cells(cell(0, i), cell(i, 0));
      const bool pj = point_cells(cell(0, j), cell(j, 0));
      if (pi && pj) continue;
      std::size_t a = i, b = j;
      if (pi && !pj) std::swap(a, b);  // varying side first, fixed offset second
      const Bound& up = cell(a, b);
      const Bound& dn = cell(b, a);
      std::string form = coeff_var(rate_at(b), shown(display, vars_[a - 1])) + " - " +
                         coeff_var(rate_at(a), shown(display, vars_[b - 1]));
      if (!up.infinite() && !dn.infinite() && !up.strict() && !dn.strict() &&
          up.value() == -dn.value()) {
        parts.push_back(form + " = " + to_string(up.value()));
      } else if (!up.infinite() && !dn.infinite()) {
        parts.push_back(to_string(-dn.value()) + side(dn.strict()) + form + side(up.strict()) +
                        to_string(up.value()));
      } else if (!up.infinite()) {
        parts.push_back(form + side(up.strict()) + to_string(up.value()));
      } else {
        parts.push_back(to_string(-dn.value()) + side(dn.strict()) + form);
      }
    }
  }
  if (parts.empty()) return "true";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " & " + parts[i];
  return out;
}

}  // namespace mzia
