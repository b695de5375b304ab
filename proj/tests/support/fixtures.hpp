// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Hand-built schemas shared between the unit and acceptance suites.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mzia/zschema.hpp"

namespace mzia::fixtures {

inline SchemaEnv pi_env() {
  SchemaEnv env;
  env.consts["pi"] = Rational(314159, 100000);
  return env;
}

inline LinearAtom unit_term(const std::string& var, CmpOp op, Expr rhs) {
  return LinearAtom{{{Expr::num(1), var}}, op, std::move(rhs)};
}

/// lo <= var <= hi
inline void add_interval(ZSchema& s, const std::string& var, Rational lo, Rational hi) {
  s.predicate.push_back(unit_term(var, CmpOp::Ge, Expr::num(std::move(lo))));
  s.predicate.push_back(unit_term(var, CmpOp::Le, Expr::num(std::move(hi))));
}

/// var = c
inline void add_point(ZSchema& s, const std::string& var, Rational c) {
  s.predicate.push_back(unit_term(var, CmpOp::Eq, Expr::num(std::move(c))));
}

/// lo <= ca*a + cb*b <= hi
inline void add_band(ZSchema& s, const std::string& a, Rational ca, const std::string& b,
                     Rational cb, Rational lo, Rational hi) {
  std::vector<std::pair<Expr, std::string>> terms{{Expr::num(std::move(ca)), a},
                                                  {Expr::num(std::move(cb)), b}};
  s.predicate.push_back(LinearAtom{terms, CmpOp::Ge, Expr::num(std::move(lo))});
  s.predicate.push_back(LinearAtom{std::move(terms), CmpOp::Le, Expr::num(std::move(hi))});
}

/// Two continuous output channels, no predicate yet.
inline ZSchema xy_zone() {
  ZSchema s;
  s.decls = {{"x", VarKind::Output, ZType::real()},
             {"y", VarKind::Output, ZType::real()}};
  return s;
}

/// Even input doubled into an angle:
/// [x?: int 0..100; y!: real | even(x?); y! = pi*x?]
inline ZSchema even_angle_schema() {
  ZSchema a;
  a.decls = {{"x", VarKind::Input, ZType::ints(0, 100)},
             {"y", VarKind::Output, ZType::real()}};
  a.predicate.push_back(ParityAtom{Expr::var("x"), true});
  a.predicate.push_back(
      unit_term("y", CmpOp::Eq, Expr::mul(Expr::constant("pi"), Expr::var("x"))));
  return a;
}

/// Coarser converter with an auxiliary scaled channel; accepts odd inputs too:
/// [x?: int 0..xMax; u?: real; y!: real; v!: real; z: int 0..zMax |
///  y! = 2*pi*(x? div 2); v! + (-z)*u? = 0]
inline ZSchema rounded_angle_schema(long long xMax = 100, long long zMax = 100) {
  ZSchema b;
  b.decls = {{"x", VarKind::Input, ZType::ints(0, xMax)},
             {"u", VarKind::Input, ZType::real()},
             {"y", VarKind::Output, ZType::real()},
             {"v", VarKind::Output, ZType::real()},
             {"z", VarKind::Internal, ZType::ints(0, zMax)}};
  b.predicate.push_back(unit_term(
      "y", CmpOp::Eq,
      Expr::mul(Expr::mul(Expr::num(2), Expr::constant("pi")),
                Expr::floordiv(Expr::var("x"), Expr::num(2)))));
  b.predicate.push_back(LinearAtom{
      {{Expr::num(1), "v"}, {Expr::neg(Expr::var("z")), "u"}}, CmpOp::Eq, Expr::num(0)});
  return b;
}

}  // namespace mzia::fixtures
