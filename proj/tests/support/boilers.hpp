// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
//
// The two steam-boiler controllers used as running examples across the test
// suites.  P is the abstract four-phase controller; Q tightens P's invariants
// and guards.  Both drive the water level y and temperature x through the
// cycle fill -> heat -> drain -> cool with piecewise-constant slopes.
#pragma once

#include "mzia/model.hpp"

namespace mzia::fixtures {

inline ZoneConstraint var_leq(std::string var, Rational c) {
  return UpperBoundC{std::move(var), Bound::leq(std::move(c))};
}

inline ZoneConstraint var_geq(std::string var, Rational c) {
  return LowerBoundC{std::move(var), Bound::leq(std::move(c))};
}

/// Action schema [v!: real | v! = value].
inline ZSchema output_pinned(const std::string& var, Rational value) {
  ZSchema s;
  s.decls.push_back({var, VarKind::Output, ZType::real()});
  s.predicate.push_back(
      LinearAtom{{{Expr::num(1), var}}, CmpOp::Eq, Expr::num(std::move(value))});
  return s;
}

inline std::vector<ActionDecl> boiler_actions() {
  return {
      {"a0", VarKind::Output, output_pinned("y", 700)},
      {"a1", VarKind::Output, output_pinned("x", 600)},
      {"a2", VarKind::Output, output_pinned("y", 800)},
      {"a3", VarKind::Output, output_pinned("x", 900)},
  };
}

inline Mzia boiler_p() {
  Mzia m;
  m.name = "boilerP";
  m.continuousVars = {{"x", VarKind::Output}, {"y", VarKind::Output}};
  m.actions = boiler_actions();
  m.locations = {
      {"l0", {{"x", 20}, {"y", 20}}, {var_leq("y", 1000)}},
      {"l1", {{"x", 20}, {"y", 30}}, {var_leq("x", 1000), var_leq("y", 940)}},
      {"l2", {{"x", 30}, {"y", 30}}, {var_leq("x", 1080)}},
      {"l3", {{"x", 30}, {"y", 20}}, {var_leq("y", 960)}},
  };
  m.initialLocation = "l0";
  m.initPoint = {{"x", 20}, {"y", 100}};
  m.transitions = {
      {"l0", "a0", {var_geq("y", 700)}, {"y"}, {{"y", 700}}, "l1"},
      {"l1", "a1", {var_geq("y", 820)}, {"x"}, {{"x", 600}}, "l2"},
      {"l2", "a2", {var_geq("x", 960)}, {"y"}, {{"y", 800}}, "l3"},
      {"l3", "a3", {var_geq("y", 900)}, {"x"}, {{"x", 900}}, "l0"},
  };
  return m;
}

inline Mzia boiler_q() {
  Mzia m;
  m.name = "boilerQ";
  m.continuousVars = {{"x", VarKind::Output}, {"y", VarKind::Output}};
  m.actions = boiler_actions();
  m.locations = {
      {"l0", {{"x", 20}, {"y", 20}}, {var_leq("y", 900)}},
      {"l1", {{"x", 20}, {"y", 30}}, {var_leq("y", 910)}},
      {"l2", {{"x", 30}, {"y", 30}}, {var_leq("x", 1020)}},
      {"l3", {{"x", 30}, {"y", 20}}, {var_leq("y", 920)}},
  };
  m.initialLocation = "l0";
  m.initPoint = {{"x", 20}, {"y", 100}};
  m.transitions = {
      {"l0", "a0", {var_geq("y", 800)}, {"y"}, {{"y", 700}}, "l1"},
      {"l1", "a1", {var_geq("y", 850)}, {"x"}, {{"x", 600}}, "l2"},
      {"l2", "a2", {var_geq("x", 990)}, {"y"}, {{"y", 800}}, "l3"},
      {"l3", "a3", {var_geq("y", 900)}, {"x"}, {{"x", 900}}, "l0"},
  };
  return m;
}

}  // namespace mzia::fixtures
