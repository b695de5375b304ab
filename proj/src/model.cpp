// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/model.hpp"

#include <algorithm>

#include "mzia/errors.hpp"
#include "mzia/schema_logic.hpp"

namespace mzia {

const Location* Mzia::find_location(const std::string& n) const {
  for (const auto& l : locations)
    if (l.name == n) return &l;
  return nullptr;
}

const Location& Mzia::location(const std::string& n) const {
  if (const Location* l = find_location(n)) return *l;
  throw ContextError("unknown location " + n + " in model " + name);
}

const ActionDecl* Mzia::find_action(const std::string& n) const {
  for (const auto& a : actions)
    if (a.name == n) return &a;
  return nullptr;
}

const ActionDecl& Mzia::action(const std::string& n) const {
  if (const ActionDecl* a = find_action(n)) return *a;
  throw ContextError("unknown action " + n + " in model " + name);
}

const VarSpec* Mzia::find_continuous(const std::string& n) const {
  for (const auto& v : continuousVars)
    if (v.name == n) return &v;
  return nullptr;
}

std::vector<std::string> Mzia::continuous_names() const {
  std::vector<std::string> out;
  out.reserve(continuousVars.size());
  for (const auto& v : continuousVars) out.push_back(v.name);
  return out;
}

std::vector<std::string> Mzia::location_names() const {
  std::vector<std::string> out;
  out.reserve(locations.size());
  for (const auto& l : locations) out.push_back(l.name);
  return out;
}

std::vector<std::string> Mzia::dcm_vars() const {
  std::vector<std::string> out = continuous_names();
  out.push_back(clockName);
  return out;
}

std::map<std::string, Rational> Mzia::dcm_rates(const Location& loc) const {
  std::map<std::string, Rational> out = loc.rates;
  out.emplace(clockName, 1);
  return out;
}

std::string finding_string(const Finding& f) {
  return "[" + f.rule + "] " + f.context + ": " + f.message;
}

namespace {

std::string transition_context(const TransitionDecl& t) {
  return "transition " + t.source + " -> " + t.target + " on " + t.action;
}

std::string bound_rel(const Bound& b) { return b.strict() ? " < " : " <= "; }

std::string constraint_string(const ZoneConstraint& c) {
  if (const auto* lo = std::get_if<LowerBoundC>(&c))
    return to_string(lo->bound.value()) + bound_rel(lo->bound) + lo->var;
  if (const auto* up = std::get_if<UpperBoundC>(&c))
    return up->var + bound_rel(up->bound) + to_string(up->bound.value());
  return "relative constraint";
}

bool point_satisfies(const std::map<std::string, Rational>& p, const ZoneConstraint& c) {
  if (const auto* lo = std::get_if<LowerBoundC>(&c)) {
    auto it = p.find(lo->var);
    if (it == p.end() || lo->bound.infinite()) return true;
    return lo->bound.strict() ? lo->bound.value() < it->second : lo->bound.value() <= it->second;
  }
  if (const auto* up = std::get_if<UpperBoundC>(&c)) {
    auto it = p.find(up->var);
    if (it == p.end()) return true;
    return up->bound.admits(it->second);
  }
  return true;
}

class Checker {
 public:
  Checker(const Mzia& m, const SchemaEnv& env) : m_(m), env_(env) {}

  ValidationReport run() {
    check_variables();
    check_actions();
    check_locations();
    check_transitions();
    check_initial_state();
    if (report_.errors.empty()) check_schema_compatibility();
    return std::move(report_);
  }

 private:
  void error(std::string rule, std::string ctx, std::string msg) {
    report_.errors.push_back({std::move(rule), std::move(ctx), std::move(msg)});
  }
  void warn(std::string rule, std::string ctx, std::string msg) {
    report_.warnings.push_back({std::move(rule), std::move(ctx), std::move(msg)});
  }

  void check_variables() {
    std::set<std::string> seen;
    for (const auto& v : m_.continuousVars) {
      if (v.name.empty()) {
        error("variable-declaration", "model " + m_.name, "continuous variable with empty name");
        continue;
      }
      if (!seen.insert(v.name).second)
        error("variable-declaration", "variable " + v.name, "declared more than once");
    }
    for (const auto& d : m_.discreteVars) {
      if (d.name.empty()) {
        error("variable-declaration", "model " + m_.name, "discrete variable with empty name");
        continue;
      }
      if (d.type.tag() == ZType::Tag::Real) {
        error("variable-declaration", "variable " + d.name,
              "discrete model variables need an enumeration or integer range type");
      }
      if (!seen.insert(d.name).second)
        error("variable-declaration", "variable " + d.name, "declared more than once");
    }
    if (seen.count("l"))
      error("variable-declaration", "variable l",
            "the name l is reserved for the location variable of state schemas");
    if (m_.clockName.empty())
      error("clock-name", "model " + m_.name, "empty clock name");
    else if (m_.clockName == "l")
      error("clock-name", "clock l",
            "the name l is reserved for the location variable of state schemas");
    else if (seen.count(m_.clockName))
      error("clock-name", "clock " + m_.clockName, "clashes with a declared variable");
  }

  void check_actions() {
    std::set<std::string> seen;
    for (const auto& a : m_.actions) {
      const std::string ctx = "action " + a.name;
      if (a.name.empty()) {
        error("action-declaration", "model " + m_.name, "action with empty name");
        continue;
      }
      if (!seen.insert(a.name).second) {
        error("action-declaration", ctx, "declared more than once");
        continue;
      }
      try {
        check_schema(a.schema);
      } catch (const Error& e) {
        error("action-schema", ctx, e.what());
        continue;
      }
      for (const auto& d : a.schema.decls) {
        if (const VarSpec* v = m_.find_continuous(d.name)) {
          if (d.type.tag() != ZType::Tag::Real)
            error("action-schema", ctx,
                  "variable " + d.name + " is continuous in the model but declared " +
                      d.type.str() + " in the schema");
          else if (d.kind != v->kind)
            error("action-schema", ctx,
                  "variable " + d.name + " uses a different channel direction than the model");
          continue;
        }
        auto it = std::find_if(m_.discreteVars.begin(), m_.discreteVars.end(),
                               [&](const VarDecl& dv) { return dv.name == d.name; });
        if (it == m_.discreteVars.end()) {
          error("action-schema", ctx, "variable " + d.name + " is not a model variable");
        } else if (d.type != it->type || d.kind != it->kind) {
          error("action-schema", ctx,
                "variable " + d.name + " is declared differently than in the model");
        }
      }
    }
  }

  void check_locations() {
    if (m_.locations.empty()) {
      error("location-declaration", "model " + m_.name, "no locations");
      return;
    }
    std::set<std::string> seen;
    for (const auto& loc : m_.locations) {
      const std::string ctx = "location " + loc.name;
      if (loc.name.empty()) {
        error("location-declaration", "model " + m_.name, "location with empty name");
        continue;
      }
      if (!seen.insert(loc.name).second) {
        error("location-declaration", ctx, "declared more than once");
        continue;
      }
      for (const auto& v : m_.continuousVars) {
        auto it = loc.rates.find(v.name);
        if (it == loc.rates.end())
          error("rate-coverage", ctx, "no rate for variable " + v.name);
        else if (it->second <= 0)
          error("rate-positivity", ctx,
                "rate of " + v.name + " is " + to_string(it->second) + ", but rates must be positive");
      }
      for (const auto& [name, value] : loc.rates) {
        (void)value;
        if (name == m_.clockName)
          error("rate-coverage", ctx, "the clock always has rate 1 and cannot be redeclared");
        else if (!m_.find_continuous(name))
          error("rate-coverage", ctx, "rate for undeclared variable " + name);
      }
      check_rect(loc.invariant, ctx, "invariant");
    }
    if (m_.initialLocation.empty())
      error("location-declaration", "model " + m_.name, "no initial location");
    else if (!m_.find_location(m_.initialLocation))
      error("location-declaration", "model " + m_.name,
            "initial location " + m_.initialLocation + " is not declared");
  }

  /// Guards and invariants are rectangles: finite per-variable bounds over the
  /// model's continuous variables, jointly satisfiable per variable.
  void check_rect(const std::vector<ZoneConstraint>& cs, const std::string& ctx,
                  const std::string& what) {
    struct Range {
      Bound upper;     // v ≺ upper
      Bound negLower;  // -v ≺ negLower
    };
    std::map<std::string, Range> ranges;
    for (const auto& c : cs) {
      if (const auto* lo = std::get_if<LowerBoundC>(&c)) {
        if (!check_rect_var(lo->var, ctx, what)) continue;
        if (!lo->bound.infinite()) {
          Range& r = ranges[lo->var];
          r.negLower = min(r.negLower, Bound::finite(-lo->bound.value(), lo->bound.strict()));
        }
      } else if (const auto* up = std::get_if<UpperBoundC>(&c)) {
        if (!check_rect_var(up->var, ctx, what)) continue;
        if (!up->bound.infinite()) {
          Range& r = ranges[up->var];
          r.upper = min(r.upper, up->bound);
        }
      } else {
        error("rectangle", ctx,
              what + " constraints bound one variable at a time; relative constraints "
                     "are not allowed here");
      }
    }
    for (const auto& [var, r] : ranges) {
      if (r.upper.infinite() || r.negLower.infinite()) continue;
      const Rational lo = -r.negLower.value();
      const bool empty = lo > r.upper.value() ||
                         (lo == r.upper.value() && (r.upper.strict() || r.negLower.strict()));
      if (empty)
        error("rectangle", ctx,
              what + " bounds on " + var + " contradict each other (lower " + to_string(lo) +
                  ", upper " + to_string(r.upper.value()) + ")");
    }
  }

  bool check_rect_var(const std::string& var, const std::string& ctx, const std::string& what) {
    if (m_.find_continuous(var)) return true;
    if (var == m_.clockName)
      error("rectangle", ctx, what + " constrains the clock, which has no bounds in a model");
    else
      error("rectangle", ctx, what + " constrains undeclared variable " + var);
    return false;
  }

  void check_transitions() {
    for (const auto& t : m_.transitions) {
      const std::string ctx = transition_context(t);
      const Location* src = m_.find_location(t.source);
      const Location* tgt = m_.find_location(t.target);
      bool ok = true;
      if (!src) {
        error("transition-reference", ctx, "source location " + t.source + " is not declared");
        ok = false;
      }
      if (!tgt) {
        error("transition-reference", ctx, "target location " + t.target + " is not declared");
        ok = false;
      }
      if (!m_.find_action(t.action)) {
        error("transition-reference", ctx, "action " + t.action + " is not declared");
        ok = false;
      }
      if (!ok) continue;
      check_rect(t.guard, ctx, "guard");
      for (const auto& v : t.resets)
        if (!m_.find_continuous(v))
          error("reset-alignment", ctx, "reset of undeclared variable " + v);
      for (const auto& v : t.resets)
        if (!t.resetValues.count(v))
          error("reset-alignment", ctx, "no value for reset variable " + v);
      for (const auto& [v, value] : t.resetValues) {
        (void)value;
        if (!t.resets.count(v))
          error("reset-alignment", ctx, "value for " + v + ", which is not reset");
      }
      for (const auto& v : m_.continuousVars) {
        auto rs = src->rates.find(v.name);
        auto rt = tgt->rates.find(v.name);
        if (rs == src->rates.end() || rt == tgt->rates.end()) continue;  // reported above
        if (rs->second != rt->second && !t.resets.count(v.name))
          error("initialized-rate", ctx,
                "rate of " + v.name + " changes from " + to_string(rs->second) + " to " +
                    to_string(rt->second) + " but " + v.name + " is not reset");
      }
    }
  }

  void check_initial_state() {
    const std::string ctx = "model " + m_.name;
    for (const auto& v : m_.continuousVars)
      if (!m_.initPoint.count(v.name))
        error("initial-state", ctx, "no initial value for variable " + v.name);
    for (const auto& [v, value] : m_.initPoint) {
      (void)value;
      if (!m_.find_continuous(v))
        error("initial-state", ctx, "initial value for undeclared variable " + v);
    }
    const Location* init = m_.find_location(m_.initialLocation);
    if (!init) return;
    for (const auto& c : init->invariant)
      if (!point_satisfies(m_.initPoint, c))
        error("initial-state", ctx,
              "initial point violates the invariant of " + init->name + ": " +
                  constraint_string(c));
  }

  ZSchema state_schema(const std::string& location) const {
    auto it = m_.stateSchemaOverrides.find(location);
    if (it != m_.stateSchemaOverrides.end()) return it->second;
    return location_state_schema(m_, location);
  }

  /// For every transition the action schema, conjoined with the source state
  /// schema and with all source-state variables projected away, should be
  /// equivalent to the target state schema.  Models rarely satisfy this to the
  /// letter -- an action that pins its output to a fresh value contradicts the
  /// source state's current value -- so violations are reported as warnings.
  void check_schema_compatibility() {
    for (const auto& t : m_.transitions) {
      const std::string ctx = transition_context(t);
      try {
        ZSchema src = state_schema(t.source);
        const ZSchema& act = m_.action(t.action).schema;
        if (!src.cases.empty() || !act.cases.empty()) continue;
        ZSchema conj = src;
        for (const auto& d : act.decls)
          if (!conj.find(d.name)) conj.decls.push_back(d);
        conj.predicate.insert(conj.predicate.end(), act.predicate.begin(), act.predicate.end());
        const ZSchema lhs = hide(conj, src.all_names(), env_);
        const ZSchema rhs = state_schema(t.target);
        if (!(tv(lhs, rhs, env_) && tv(rhs, lhs, env_)))
          warn("schema-compatibility", ctx,
               "the action schema applied to the source state does not pin down the "
               "target state schema");
      } catch (const Error& e) {
        error("schema-compatibility", ctx, e.what());
      }
    }
  }

  const Mzia& m_;
  const SchemaEnv& env_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_model(const Mzia& m, const SchemaEnv& env) {
  return Checker(m, env).run();
}

std::set<std::string> enabled_actions(const Mzia& m, const std::string& location) {
  m.location(location);  // reject unknown locations
  std::set<std::string> out;
  for (const auto& t : m.transitions)
    if (t.source == location) out.insert(t.action);
  return out;
}

ZSchema location_state_schema(const Mzia& m, const std::string& location) {
  const Location& loc = m.location(location);
  ZSchema s;
  s.decls.push_back({"l", VarKind::Internal, ZType::enums(m.location_names())});
  for (const auto& v : m.continuousVars) s.decls.push_back({v.name, v.kind, ZType::real()});
  for (const auto& d : m.discreteVars) s.decls.push_back(d);
  s.decls.push_back({m.clockName, VarKind::Internal, ZType::real()});
  s.predicate.push_back(CompareAtom{Expr::var("l"), CmpOp::Eq, Expr::label(loc.name)});
  return s;
}

}  // namespace mzia
