// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/zonegraph.hpp"

#include <algorithm>

#include "doctest.h"
#include "mzia/errors.hpp"
#include "boilers.hpp"

using namespace mzia;
using namespace mzia::fixtures;

namespace {

std::string clock_free_string(const Mzia& m, const SymState& s) {
  return s.zone.project(m.clockName).zone_string();
}

std::pair<Rational, Rational> clock_range(const Mzia& m, const SymState& s) {
  const std::size_t ci = s.zone.index_of(m.clockName);
  return {-s.zone.entry(0, ci).value(), s.zone.entry(ci, 0).value()};
}

/// Reachability fixture with no transitions and a bounded invariant: the
/// simulator runs out of moves immediately.
Mzia stuck_tank() {
  Mzia m;
  m.name = "stuckTank";
  m.continuousVars = {{"v", VarKind::Output}};
  Location only;
  only.name = "full";
  only.rates = {{"v", 1}};
  only.invariant = {var_leq("v", 5)};
  m.locations = {only};
  m.initialLocation = "full";
  m.initPoint = {{"v", 5}};
  return m;
}

}  // namespace

TEST_CASE("first boiler reaches a closed cover of seven regions") {
  const Mzia p = boiler_p();
  const ZoneAutomaton za = build_zone_automaton(p);

  REQUIRE(za.states.size() == 7);
  CHECK(za.initials == std::vector<std::size_t>{0});

  const std::vector<std::string> locs = {"l0", "l1", "l2", "l3", "l0", "l1", "l2"};
  const std::vector<std::string> zones = {
      "x = 20 & y = 100",
      "620 <= x <= 920 & y = 700 & 4600 <= 30x - 20y <= 13600",
      "x = 600 & 820 <= y <= 940 & 6600 <= 30y - 30x <= 10200",
      "960 <= x <= 1080 & y = 800 & -4800 <= 20x - 30y <= -2400",
      "x = 900 & 900 <= y <= 960 & 0 <= 20y - 20x <= 1200",
      "900 <= x <= 1000 & y = 700 & 13000 <= 30x - 20y <= 16000",
      "x = 600 & 820 <= y <= 850 & 6600 <= 30y - 30x <= 7500",
  };
  for (std::size_t i = 0; i < za.states.size(); ++i) {
    CAPTURE(i);
    CHECK(za.states[i].location == locs[i]);
    CHECK(clock_free_string(p, za.states[i]) == zones[i]);
  }

  const std::vector<ZaEdge> edges = {{0, "a0", 1}, {1, "a1", 2}, {2, "a2", 3},
                                     {3, "a3", 4}, {4, "a0", 5}, {5, "a1", 6}};
  CHECK(za.transitions == edges);
  CHECK(za.subsumed == std::map<std::size_t, std::size_t>{{6, 2}});
  CHECK(za.frontier.empty());
  CHECK(za.resolve(6) == 2);
  CHECK(za.resolve(3) == 3);

  SUBCASE("the folded region sprouts no outgoing edges") {
    for (const auto& e : za.transitions) CHECK(e.from != 6);
  }

  SUBCASE("entry clocks") {
    const std::vector<std::pair<int, int>> ranges = {{0, 0},   {30, 45}, {34, 49}, {46, 65},
                                                     {51, 73}, {51, 75}, {55, 78}};
    for (std::size_t i = 0; i < za.states.size(); ++i) {
      CAPTURE(i);
      const auto [lo, hi] = clock_range(p, za.states[i]);
      CHECK(lo == ranges[i].first);
      CHECK(hi == ranges[i].second);
    }
  }
}

TEST_CASE("second boiler stops at five regions") {
  const Mzia q = boiler_q();
  const ZoneAutomaton za = build_zone_automaton(q);

  REQUIRE(za.states.size() == 5);
  const std::vector<std::string> locs = {"l0", "l1", "l2", "l3", "l0"};
  const std::vector<std::string> zones = {
      "x = 20 & y = 100",
      "720 <= x <= 820 & y = 700 & 7600 <= 30x - 20y <= 10600",
      "x = 600 & 850 <= y <= 910 & 7500 <= 30y - 30x <= 9300",
      "990 <= x <= 1020 & y = 800 & -4200 <= 20x - 30y <= -3600",
      "x = 900 & 900 <= y <= 920 & 0 <= 20y - 20x <= 400",
  };
  for (std::size_t i = 0; i < za.states.size(); ++i) {
    CAPTURE(i);
    CHECK(za.states[i].location == locs[i]);
    CHECK(clock_free_string(q, za.states[i]) == zones[i]);
  }

  const std::vector<ZaEdge> edges = {{0, "a0", 1}, {1, "a1", 2}, {2, "a2", 3}, {3, "a3", 4}};
  CHECK(za.transitions == edges);
  CHECK(za.subsumed.empty());

  // The last region pokes past the invariant of l0 (y reaches 920 > 900), so
  // it is reported but not stepped through.
  CHECK(za.frontier == std::set<std::size_t>{4});
  const Dcm inv0 =
      Dcm::from_constraints(q.dcm_vars(), q.dcm_rates(q.location("l0")), q.location("l0").invariant);
  CHECK(!inv0.includes(za.states[4].zone));

  SUBCASE("entry clocks") {
    const std::vector<std::pair<int, int>> ranges = {{0, 0}, {35, 40}, {40, 47}, {53, 61}, {58, 67}};
    for (std::size_t i = 0; i < za.states.size(); ++i) {
      CAPTURE(i);
      const auto [lo, hi] = clock_range(q, za.states[i]);
      CHECK(lo == ranges[i].first);
      CHECK(hi == ranges[i].second);
    }
  }
}

TEST_CASE("regions outside the frontier sit inside their invariants") {
  for (const Mzia& m : {boiler_p(), boiler_q()}) {
    const ZoneAutomaton za = build_zone_automaton(m);
    for (std::size_t i = 0; i < za.states.size(); ++i) {
      CAPTURE(m.name);
      CAPTURE(i);
      const Location& loc = m.location(za.states[i].location);
      const Dcm inv = Dcm::from_constraints(m.dcm_vars(), m.dcm_rates(loc), loc.invariant);
      CHECK(inv.includes(za.states[i].zone) == !za.frontier.count(i));
      CHECK(!za.states[i].zone.is_empty());
    }
  }
}

TEST_CASE("clock lower bounds never decrease along an edge") {
  for (const Mzia& m : {boiler_p(), boiler_q()}) {
    const ZoneAutomaton za = build_zone_automaton(m);
    for (const auto& e : za.transitions) {
      CAPTURE(m.name);
      CAPTURE(e.from);
      CAPTURE(e.to);
      CHECK(clock_range(m, za.states[e.from]).first <= clock_range(m, za.states[e.to]).first);
    }
  }
}

TEST_CASE("construction is deterministic") {
  const Mzia p = boiler_p();
  const ZoneAutomaton a = build_zone_automaton(p);
  const ZoneAutomaton b = build_zone_automaton(p);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    CHECK(a.states[i].location == b.states[i].location);
    CHECK(a.states[i].zone == b.states[i].zone);
  }
  CHECK(a.transitions == b.transitions);
  CHECK(a.subsumed == b.subsumed);
  CHECK(a.frontier == b.frontier);
}

TEST_CASE("successor trace exposes every stage") {
  const Mzia p = boiler_p();
  const SymState s0 = initial_symstate(p);
  PostTrace tr;
  const auto s1 = post(p, s0, p.transitions[0], &tr);
  REQUIRE(s1.has_value());
  CHECK(s1->location == "l1");

  REQUIRE(tr.source.has_value());
  REQUIRE(tr.invariant.has_value());
  REQUIRE(tr.elapsed.has_value());
  REQUIRE(tr.guard.has_value());
  REQUIRE(tr.guarded.has_value());
  REQUIRE(tr.result.has_value());

  const std::size_t x = tr.source->index_of("x");
  const std::size_t y = tr.source->index_of("y");

  SUBCASE("start region") {
    CHECK(tr.source->entry(0, x) == Bound::leq(-20));
    CHECK(tr.source->entry(x, 0) == Bound::leq(20));
    CHECK(tr.source->entry(0, y) == Bound::leq(-100));
    CHECK(tr.source->entry(y, 0) == Bound::leq(100));
    CHECK(tr.source->entry(x, y) == Bound::leq(-1600));
    CHECK(tr.source->entry(y, x) == Bound::leq(1600));
  }

  SUBCASE("invariant matrix carries the single ceiling") {
    CHECK(tr.invariant->entry(y, 0) == Bound::leq(1000));
    CHECK(tr.invariant->entry(0, y) == Bound::infinity());
    CHECK(tr.invariant->entry(x, 0) == Bound::infinity());
    CHECK(tr.invariant->entry(x, y) == Bound::infinity());
  }

  SUBCASE("time elapse drops upper bounds but keeps the bands") {
    CHECK(tr.elapsed->entry(0, x) == Bound::leq(-20));
    CHECK(tr.elapsed->entry(0, y) == Bound::leq(-100));
    CHECK(tr.elapsed->entry(x, 0) == Bound::infinity());
    CHECK(tr.elapsed->entry(y, 0) == Bound::infinity());
    CHECK(tr.elapsed->entry(x, y) == Bound::leq(-1600));
    CHECK(tr.elapsed->entry(y, x) == Bound::leq(1600));
  }

  SUBCASE("guard matrix") {
    CHECK(tr.guard->entry(0, y) == Bound::leq(-700));
    CHECK(tr.guard->entry(y, 0) == Bound::infinity());
  }

  SUBCASE("guarded region") {
    CHECK(tr.guarded->entry(0, x) == Bound::leq(-620));
    CHECK(tr.guarded->entry(x, 0) == Bound::leq(920));
    CHECK(tr.guarded->entry(0, y) == Bound::leq(-700));
    CHECK(tr.guarded->entry(y, 0) == Bound::leq(1000));
    CHECK(tr.guarded->entry(x, y) == Bound::leq(-1600));
    CHECK(tr.guarded->entry(y, x) == Bound::leq(1600));
  }

  SUBCASE("reset pins y and rescales the bands to the new rates") {
    CHECK(tr.result->rate("x") == 20);
    CHECK(tr.result->rate("y") == 30);
    CHECK(tr.result->entry(0, x) == Bound::leq(-620));
    CHECK(tr.result->entry(x, 0) == Bound::leq(920));
    CHECK(tr.result->entry(0, y) == Bound::leq(-700));
    CHECK(tr.result->entry(y, 0) == Bound::leq(700));
    CHECK(tr.result->entry(x, y) == Bound::leq(13600));
    CHECK(tr.result->entry(y, x) == Bound::leq(-4600));
  }
}

TEST_CASE("successor computation rejects or empties out") {
  const Mzia p = boiler_p();
  const SymState s0 = initial_symstate(p);

  SUBCASE("transition must start at the current location") {
    CHECK_THROWS_AS(post(p, s0, p.transitions[1]), ContextError);
  }

  SUBCASE("unreachable guard gives no successor") {
    TransitionDecl far = p.transitions[0];
    far.guard = {var_geq("x", 5000)};
    PostTrace tr;
    CHECK(!post(p, s0, far, &tr).has_value());
    REQUIRE(tr.guarded.has_value());
    CHECK(tr.guarded->is_empty());
    CHECK(!tr.result.has_value());
  }
}

TEST_CASE("initial region checks the model") {
  Mzia p = boiler_p();

  SUBCASE("well-formed") {
    const SymState s0 = initial_symstate(p);
    CHECK(s0.location == "l0");
    CHECK(s0.zone.contains_point({{"x", 20}, {"y", 100}, {"clock", 0}}));
  }

  SUBCASE("starting point must satisfy the invariant") {
    p.initPoint["y"] = 1200;
    CHECK_THROWS_WITH_AS(initial_symstate(p), "initial valuation violates the invariant of l0",
                         Error);
  }

  SUBCASE("every channel needs a value") {
    p.initPoint.erase("x");
    CHECK_THROWS_AS(initial_symstate(p), ContextError);
  }
}

TEST_CASE("state budget is enforced") {
  BuildOptions opts;
  opts.maxStates = 3;
  CHECK_THROWS_AS(build_zone_automaton(boiler_p(), opts), CapacityError);
}

TEST_CASE("redirect mode reuses the covering region") {
  BuildOptions opts;
  opts.mode = SubsumptionMode::Redirect;
  const ZoneAutomaton za = build_zone_automaton(boiler_p(), opts);
  REQUIRE(za.states.size() == 6);
  CHECK(za.subsumed.empty());
  const std::vector<ZaEdge> edges = {{0, "a0", 1}, {1, "a1", 2}, {2, "a2", 3},
                                     {3, "a3", 4}, {4, "a0", 5}, {5, "a1", 2}};
  CHECK(za.transitions == edges);
}

TEST_CASE("state schemas spell out the region") {
  const Mzia p = boiler_p();
  const ZoneAutomaton za = build_zone_automaton(p);

  const ZSchema s0 = synthesize_state_schema(p, za.states[0]);
  CHECK(schema_string(s0) ==
        "[l: {l0, l1, l2, l3}; x!: real; y!: real; clock: real | "
        "l = l0; x! = 20; y! = 100; clock = 0]");
  CHECK(s0.names(VarKind::Internal) == std::set<std::string>{"l", "clock"});

  const ZSchema s1 = synthesize_state_schema(p, za.states[1]);
  CHECK(schema_string(s1) ==
        "[l: {l0, l1, l2, l3}; x!: real; y!: real; clock: real | "
        "l = l1; x! >= 620; x! <= 920; y! = 700; 30*x! + (-20)*y! >= 4600; "
        "30*x! + (-20)*y! <= 13600; clock >= 30; clock <= 45]");

  const Mzia q = boiler_q();
  const ZoneAutomaton zq = build_zone_automaton(q);
  const ZSchema t1 = synthesize_state_schema(q, zq.states[1]);
  CHECK(schema_string(t1) ==
        "[l: {l0, l1, l2, l3}; x!: real; y!: real; clock: real | "
        "l = l1; x! >= 720; x! <= 820; y! = 700; 30*x! + (-20)*y! >= 7600; "
        "30*x! + (-20)*y! <= 10600; clock >= 35; clock <= 40]");
}

TEST_CASE("finite view folds subsumed regions away") {
  const Mzia p = boiler_p();
  const FiniteSystem fp = to_finite_system(p, build_zone_automaton(p));
  CHECK(fp.name == "boilerP");
  CHECK(fp.states == std::vector<std::string>{"s0", "s1", "s2", "s3", "s4", "s5"});
  CHECK(fp.initials == std::vector<std::size_t>{0});
  const std::vector<FsEdge> pe = {{0, "a0", 1}, {1, "a1", 2}, {2, "a2", 3},
                                  {3, "a3", 4}, {4, "a0", 5}, {5, "a1", 2}};
  CHECK(fp.transitions == pe);
  CHECK(fp.stateSchemas.size() == 6);
  CHECK(fp.actionSchemas.size() == 4);
  CHECK(fp.enabled(4) == std::set<std::string>{"a0"});
  CHECK(fp.successors(5, "a1") == std::vector<std::size_t>{2});

  const Mzia q = boiler_q();
  const FiniteSystem fq = to_finite_system(q, build_zone_automaton(q));
  CHECK(fq.states == std::vector<std::string>{"s0", "s1", "s2", "s3", "s4"});
  const std::vector<FsEdge> qe = {{0, "a0", 1}, {1, "a1", 2}, {2, "a2", 3}, {3, "a3", 4}};
  CHECK(fq.transitions == qe);
  CHECK(fq.enabled(4).empty());
}

TEST_CASE("simulation is reproducible and respects invariants") {
  const Mzia p = boiler_p();
  const Trajectory a = simulate(p, 7, 40);
  const Trajectory b = simulate(p, 7, 40);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].isDelay == b.steps[i].isDelay);
    CHECK(a.steps[i].action == b.steps[i].action);
    CHECK(a.steps[i].values == b.steps[i].values);
    CHECK(a.steps[i].clock == b.steps[i].clock);
  }
  CHECK(a.initialLocation == "l0");
  CHECK(a.initialValues == p.initPoint);

  for (const auto& st : a.steps) {
    CAPTURE(st.location);
    for (const auto& c : p.location(st.location).invariant) {
      const auto* up = std::get_if<UpperBoundC>(&c);
      if (up) CHECK(up->bound.admits(st.values.at(up->var)));
    }
  }
}

TEST_CASE("simulated runs stay inside the reachable cover") {
  for (const Mzia& m : {boiler_p(), boiler_q()}) {
    const ZoneAutomaton za = build_zone_automaton(m);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      CAPTURE(m.name);
      CAPTURE(seed);
      CHECK(trajectory_covered(m, za, simulate(m, seed, 40)));
    }
  }
}

TEST_CASE("trajectory membership is decided step by step") {
  const Mzia p = boiler_p();
  const ZoneAutomaton za = build_zone_automaton(p);

  Trajectory t;
  t.initialLocation = "l0";
  t.initialValues = {{"x", 20}, {"y", 100}};

  TrajStep wait;
  wait.isDelay = true;
  wait.delay = 30;
  wait.location = "l0";
  wait.values = {{"x", 620}, {"y", 700}};
  wait.clock = 30;

  TrajStep fire;
  fire.action = "a0";
  fire.location = "l1";
  fire.values = {{"x", 620}, {"y", 700}};
  fire.clock = 30;

  SUBCASE("a legitimate prefix is covered") {
    t.steps = {wait, fire};
    CHECK(trajectory_covered(p, za, t));
  }

  SUBCASE("delays alone never disqualify") {
    t.steps = {wait};
    CHECK(trajectory_covered(p, za, t));
  }

  SUBCASE("a point outside every successor region fails") {
    fire.values["x"] = 619;
    t.steps = {wait, fire};
    CHECK(!trajectory_covered(p, za, t));
  }

  SUBCASE("a wrong target location fails") {
    fire.location = "l2";
    t.steps = {wait, fire};
    CHECK(!trajectory_covered(p, za, t));
  }

  SUBCASE("a wrong start fails") {
    t.initialValues["y"] = 99;
    t.steps = {};
    CHECK(!trajectory_covered(p, za, t));
  }

  SUBCASE("folded regions stand in for their coverers") {
    // Walk the loop once and re-enter l2 through the folded region 6.
    Trajectory u = simulate(p, 3, 60);
    CHECK(trajectory_covered(p, za, u));
  }
}

TEST_CASE("a model without moves deadlocks at once") {
  const Mzia m = stuck_tank();
  const Trajectory t = simulate(m, 42, 10);
  CHECK(t.deadlocked);
  CHECK(t.steps.empty());

  const ZoneAutomaton za = build_zone_automaton(m);
  CHECK(za.states.size() == 1);
  CHECK(za.transitions.empty());
  CHECK(trajectory_covered(m, za, t));
}
