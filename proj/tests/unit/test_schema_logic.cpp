// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Schema implication and the refinement preorder, cross-checked against a
// point-by-point brute-force oracle on grid-exact constraint families.

#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "mzia/errors.hpp"
#include "mzia/schema_logic.hpp"

using namespace mzia;
using namespace mzia::fixtures;

namespace {

Value num_v(long long n) { return Value(Rational(n)); }

// The boiler's second reachable zone in the wider tank automaton.
ZSchema wide_zone() {
  ZSchema s = xy_zone();
  add_interval(s, "x", 620, 920);
  add_band(s, "x", 30, "y", -20, 4600, 13600);
  add_point(s, "y", 700);
  return s;
}

// The matching zone in the narrower tank automaton; a strict subset.
ZSchema narrow_zone() {
  ZSchema s = xy_zone();
  add_interval(s, "x", 720, 820);
  add_band(s, "x", 30, "y", -20, 7600, 10600);
  add_point(s, "y", 700);
  return s;
}

// Full state schema: location, both levels, and elapsed time, with only the
// levels observable.
ZSchema state_schema(const std::string& loc, const std::vector<std::string>& locs,
                     const ZSchema& zone, Rational clockLo, Rational clockHi) {
  ZSchema s;
  s.decls = {{"l", VarKind::Internal, ZType::enums(locs)},
             {"x", VarKind::Output, ZType::real()},
             {"y", VarKind::Output, ZType::real()},
             {"clock", VarKind::Internal, ZType::real()}};
  s.predicate.push_back(CompareAtom{Expr::var("l"), CmpOp::Eq, Expr::label(loc)});
  s.predicate.insert(s.predicate.end(), zone.predicate.begin(), zone.predicate.end());
  add_interval(s, "clock", std::move(clockLo), std::move(clockHi));
  return s;
}

ZSchema outputs_only(std::vector<Atom> atoms) {
  ZSchema s;
  s.decls = {{"y", VarKind::Output, ZType::real()}};
  s.predicate = std::move(atoms);
  return s;
}

ZSchema inputs_only(long long hi, Atom a) {
  ZSchema s;
  s.decls = {{"x", VarKind::Input, ZType::ints(0, hi)}};
  s.predicate.push_back(std::move(a));
  return s;
}

}  // namespace

TEST_CASE("implication between zone schemas mirrors zone inclusion") {
  ZSchema wide = wide_zone(), narrow = narrow_zone();
  CHECK(tv(narrow, wide));
  CHECK(tv(wide, wide));
  CHECK(tv(narrow, narrow));

  Assignment cex;
  CHECK(!tv(wide, narrow, {}, &cex));
  REQUIRE(cex.count("x") == 1);
  REQUIRE(cex.count("y") == 1);
  CHECK(evaluate(cex, wide));
  CHECK(!evaluate(cex, narrow));
}

TEST_CASE("implication enumerates the discrete part exactly") {
  SchemaEnv env = pi_env();
  ZSchema a = even_angle_schema();
  CHECK(tv(a, a, env));

  ZSchema hb = hide(rounded_angle_schema(), {"z", "u", "v"}, env);
  CHECK(tv(a, hb, env));  // the finer angles coarsen losslessly on even inputs

  Assignment cex;
  CHECK(!tv(hb, a, env, &cex));
  Assignment expected{{"x", num_v(1)}, {"y", num_v(0)}};
  CHECK(cex == expected);  // the first odd input, with its rounded-down angle
}

TEST_CASE("mismatched declared types are a usage error") {
  ZSchema a;
  a.decls = {{"y", VarKind::Output, ZType::real()}};
  ZSchema b;
  b.decls = {{"y", VarKind::Output, ZType::ints(0, 3)}};
  CHECK_THROWS_AS(tv(a, b), ContextError);
}

TEST_CASE("preorder on output-only schemas narrows the range") {
  ZSchema mid = outputs_only({unit_term("y", CmpOp::Eq, Expr::num(700))});
  ZSchema band = outputs_only({unit_term("y", CmpOp::Ge, Expr::num(600)),
                               unit_term("y", CmpOp::Le, Expr::num(800))});
  for (RelMode mode : {RelMode::Guarded, RelMode::Strict}) {
    CHECK(rcl(mid, mid, mode));
    CHECK(rcl(band, mid, mode));   // narrowing the outputs refines
    CHECK(!rcl(mid, band, mode));  // widening them does not
  }
}

TEST_CASE("preorder on input-only schemas widens the domain") {
  ZSchema low = inputs_only(9, CompareAtom{Expr::var("x"), CmpOp::Le, Expr::num(3)});
  ZSchema high = inputs_only(9, CompareAtom{Expr::var("x"), CmpOp::Le, Expr::num(5)});
  for (RelMode mode : {RelMode::Guarded, RelMode::Strict}) {
    CHECK(rcl(low, high, mode));   // accepting more inputs refines
    CHECK(!rcl(high, low, mode));  // accepting fewer does not
  }
}

TEST_CASE("preorder ground rules") {
  ZSchema empty;
  CHECK(rcl(empty, empty));

  ZSchema y = outputs_only({unit_term("y", CmpOp::Eq, Expr::num(0))});
  ZSchema w = y;
  w.decls[0].name = "w";
  w.predicate.clear();
  add_point(w, "w", 0);
  CHECK(!rcl(y, w));  // different output channels never relate
  CHECK(!rcl(y, empty));

  ZSchema withInternal = y;
  withInternal.decls.push_back({"h", VarKind::Internal, ZType::real()});
  CHECK_THROWS_AS(rcl(withInternal, y), ContextError);
  CHECK_THROWS_AS(rcl(y, withInternal), ContextError);
}

TEST_CASE("refinement accepts the coarse angle converter under the guarded reading") {
  SchemaEnv env = pi_env();
  ZSchema a = even_angle_schema();
  ZSchema b = rounded_angle_schema();

  CHECK(rcz(a, b, RelMode::Guarded, env));
  CHECK(!rcz(a, b, RelMode::Strict, env));  // odd inputs separate the readings
  CHECK(!rcz(b, a, RelMode::Guarded, env));  // the extra input channel is required
  CHECK(!rcz(b, a, RelMode::Strict, env));
}

TEST_CASE("refinement is reflexive") {
  SchemaEnv env = pi_env();
  ZSchema a = even_angle_schema();
  ZSchema b = rounded_angle_schema(10, 8);  // smaller index ranges, same shape
  for (RelMode mode : {RelMode::Guarded, RelMode::Strict}) {
    CHECK(rcz(a, a, mode, env));
    CHECK(rcz(b, b, mode, env));
  }
}

TEST_CASE("state schemas with hidden location and time compare by zone") {
  std::vector<std::string> pl{"l0", "l1", "l2", "l3"};
  std::vector<std::string> ql{"m0", "m1", "m2", "m3"};
  ZSchema ps = state_schema("l1", pl, wide_zone(), 30, 45);
  ZSchema qs = state_schema("m1", ql, narrow_zone(), 35, 40);
  for (RelMode mode : {RelMode::Guarded, RelMode::Strict}) {
    CHECK(rcz(ps, qs, mode));
    CHECK(!rcz(qs, ps, mode));
    CHECK(rcz(ps, ps, mode));
  }
}

TEST_CASE("brute-force oracle ground rules") {
  SchemaEnv env = pi_env();
  ZSchema empty;
  CHECK(geq_bruteforce(empty, empty));

  ZSchema low = inputs_only(9, CompareAtom{Expr::var("x"), CmpOp::Le, Expr::num(3)});
  ZSchema high = inputs_only(9, CompareAtom{Expr::var("x"), CmpOp::Le, Expr::num(5)});
  CHECK(geq_bruteforce(low, high));
  CHECK(!geq_bruteforce(high, low));

  ZSchema mid = outputs_only({unit_term("y", CmpOp::Eq, Expr::num(7))});
  ZSchema band = outputs_only({unit_term("y", CmpOp::Ge, Expr::num(6)),
                               unit_term("y", CmpOp::Le, Expr::num(8))});
  CHECK(geq_bruteforce(band, mid));
  CHECK(!geq_bruteforce(mid, band));

  ZSchema b = rounded_angle_schema();
  CHECK_THROWS_AS(geq_bruteforce(b, b), ContextError);  // internals unhidden
  ZSchema justX = inputs_only(3, CompareAtom{Expr::var("x"), CmpOp::Ge, Expr::num(0)});
  ZSchema xAndY = justX;
  xAndY.decls.push_back({"y", VarKind::Output, ZType::real()});
  CHECK_THROWS_AS(geq_bruteforce(justX, xAndY), ContextError);  // mismatched sets

  BruteCaps tight;
  tight.maxCases = 10;
  ZSchema a = even_angle_schema();
  ZSchema hb = hide(b, {"z", "u", "v"}, env);
  CHECK_THROWS_AS(geq_bruteforce(a, hb, RelMode::Guarded, env, tight), CapacityError);
}

TEST_CASE("brute-force oracle agrees on the angle converter pair") {
  SchemaEnv env = pi_env();
  ZSchema a = even_angle_schema();
  ZSchema hb = hide(rounded_angle_schema(), {"z", "u", "v"}, env);
  for (RelMode mode : {RelMode::Guarded, RelMode::Strict}) {
    bool exact = rcl(a, hb, mode, env);
    CHECK(exact == (mode == RelMode::Guarded));
    CHECK(geq_bruteforce(a, hb, mode, env) == exact);
  }
}

TEST_CASE("preorder matches the oracle on random rectangle schemas") {
  std::mt19937_64 rng(20260823);
  auto pick = [&](int lo, int hi) {
    return int(rng() % (std::uint64_t)(hi - lo + 1)) + lo;
  };
  const CmpOp cmps[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Eq, CmpOp::Ne, CmpOp::Ge, CmpOp::Gt};
  const CmpOp linCmps[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Eq, CmpOp::Ge, CmpOp::Gt};

  // The half-step grid meets every nonempty region cut out by integer
  // rectangle bounds, so the oracle is exact on everything generated here.
  BruteCaps caps;
  caps.lo = -6;
  caps.hi = 6;
  caps.step = Rational(1, 2);

  for (int iter = 0; iter < 100; ++iter) {
    CAPTURE(iter);
    bool withU = pick(0, 1) == 1;
    std::vector<std::string> contVars{"y"};
    if (withU) contVars.push_back("u");

    auto make_side = [&]() {
      ZSchema s;
      s.decls = {{"x", VarKind::Input, ZType::ints(0, 3)}};
      if (withU) s.decls.push_back({"u", VarKind::Input, ZType::real()});
      s.decls.push_back({"y", VarKind::Output, ZType::real()});
      int numAtoms = pick(1, 3);
      for (int i = 0; i < numAtoms; ++i) {
        if (pick(0, 2) == 0) {
          s.predicate.push_back(
              CompareAtom{Expr::var("x"), cmps[pick(0, 5)], Expr::num(pick(0, 4))});
        } else {
          const std::string& v = contVars[(std::size_t)pick(0, (int)contVars.size() - 1)];
          s.predicate.push_back(
              unit_term(v, linCmps[pick(0, 4)], Expr::num(pick(-5, 5))));
        }
      }
      check_schema(s);
      return s;
    };

    ZSchema m = make_side();
    ZSchema n = make_side();
    for (RelMode mode : {RelMode::Guarded, RelMode::Strict}) {
      CAPTURE(mode == RelMode::Guarded ? "guarded" : "strict");
      CHECK(rcl(m, n, mode) == geq_bruteforce(m, n, mode, {}, caps));
    }
  }
}
