// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "mzia/linear.hpp"

using namespace mzia;

namespace {

LinearSystem interval(const std::string& var, Rational lo, Rational hi, bool lo_strict = false,
                      bool hi_strict = false) {
  LinearSystem s;
  LinearConstraint upper = lin_leq({{var, 1}}, hi);
  upper.strict = hi_strict;
  LinearConstraint lower = lin_leq({{var, -1}}, -lo);
  lower.strict = lo_strict;
  s.add(upper);
  s.add(lower);
  return s;
}

}  // namespace

TEST_CASE("constraint basics") {
  LinearConstraint c = lin_leq({{"x", 2}, {"y", -1}}, 5);
  CHECK(c.evaluate({{"x", 3}, {"y", 1}}) == Rational(5));
  CHECK(c.admits({{"x", 3}, {"y", 1}}));
  CHECK(!c.admits({{"x", 4}, {"y", 1}}));
  LinearConstraint n = c.negated();
  CHECK(n.strict);
  CHECK(n.coeffs.at("x") == Rational(-2));
  CHECK(n.bound == Rational(-5));
  CHECK(!n.admits({{"x", 3}, {"y", 1}}));  // boundary belongs to c, not ¬c
  CHECK(n.admits({{"x", 4}, {"y", 1}}));
  LinearConstraint s = c.substituted("y", 1);
  CHECK(s.coeffs.count("y") == 0);
  CHECK(s.bound == Rational(6));
  CHECK(lin_leq({{"x", 0}, {"y", 1}}, 2).coeffs.count("x") == 0);
}

TEST_CASE("feasibility with strictness") {
  CHECK(interval("x", 1, 2).feasible());
  CHECK(!interval("x", 2, 1).feasible());
  CHECK(interval("x", 1, 1).feasible());
  CHECK(!interval("x", 1, 1, true, false).feasible());
  CHECK(!interval("x", 1, 1, false, true).feasible());
  CHECK(interval("x", 1, Rational(1001, 1000), true, true).feasible());
  LinearSystem sys;
  sys.add(lin_leq({}, -1));  // 0 <= -1
  CHECK(sys.trivially_false());
  CHECK(!sys.feasible());
}

TEST_CASE("entailment honours strictness") {
  LinearSystem ge2 = interval("x", 2, 1000000);
  CHECK(ge2.entails(lin_leq({{"x", -1}}, -1)));   // x >= 1
  CHECK(!ge2.entails(lin_leq({{"x", -1}}, -3)));  // x >= 3
  CHECK(ge2.entails(lin_less({{"x", -1}}, -1)));  // x > 1
  CHECK(!ge2.entails(lin_less({{"x", -1}}, -2))); // x > 2 fails at x = 2
  LinearSystem gt2 = interval("x", 2, 1000000, true, false);
  CHECK(gt2.entails(lin_leq({{"x", -1}}, -2)));   // x > 2 gives x >= 2
  CHECK(gt2.entails(lin_less({{"x", -1}}, -2)));
}

TEST_CASE("elimination combines opposite-signed rows") {
  LinearSystem s;
  s.add(lin_leq({{"x", 1}, {"y", 1}}, 10));
  s.add(lin_leq({{"x", 1}, {"y", -1}}, 2));
  LinearSystem e = s.eliminated("y");
  REQUIRE(e.constraints().size() == 1);
  CHECK(e.constraints()[0] == lin_leq({{"x", 2}}, 12));
  // Both rows bound x from above only, so eliminating x leaves y free.
  CHECK(s.eliminated("x").constraints().empty());
  CHECK(s.eliminated("x").feasible());
  CHECK(s.eliminated("z").constraints().size() == 2);  // absent variable: no change
}

TEST_CASE("projection preserves satisfiability of partial points") {
  // x in [0,4], y = x + 1 projects on y to [1,5].
  LinearSystem s = interval("x", 0, 4);
  s.add_equal({{"y", 1}, {"x", -1}}, 1);
  LinearSystem proj = s.eliminated("x");
  CHECK(proj.admits({{"y", 1}}));
  CHECK(proj.admits({{"y", 5}}));
  CHECK(!proj.admits({{"y", Rational(51, 10)}}));
  CHECK(!proj.admits({{"y", Rational(9, 10)}}));
}

TEST_CASE("sample lands inside, including degenerate and strict cases") {
  auto check_sample = [](const LinearSystem& s) {
    auto p = s.sample();
    REQUIRE(p.has_value());
    CHECK(s.admits(*p));
  };
  check_sample(interval("x", Rational(1, 3), Rational(3, 7)));
  check_sample(interval("x", 5, 5));
  check_sample(interval("x", 1, Rational(1001, 1000), true, true));
  LinearSystem chain = interval("y", 2, 2);
  chain.add_equal({{"x", 1}, {"y", -1}}, 0);  // x = y
  chain.add(lin_leq({{"x", 1}, {"z", 1}}, 1));
  check_sample(chain);
  CHECK(chain.sample()->at("x") == Rational(2));
  CHECK(!interval("x", 3, 2).sample().has_value());
  LinearSystem unconstrained;
  CHECK(unconstrained.sample().has_value());  // empty conjunction is the full space
}

TEST_CASE("union coverage, exact at boundaries") {
  LinearSystem box = interval("x", 0, 10);
  CHECK(covered_by_union(box, {interval("x", 0, 5), interval("x", 4, 10)}));
  CHECK(covered_by_union(box, {interval("x", 0, 5, false, true), interval("x", 5, 10)}));

  Point cex;
  CHECK(!covered_by_union(box, {interval("x", 0, 4), interval("x", 6, 10)}, &cex));
  CHECK(cex.at("x") > 4);
  CHECK(cex.at("x") < 6);

  // Removing the single point 5 must be detected.
  CHECK(!covered_by_union(
      box, {interval("x", 0, 5, false, true), interval("x", 5, 10, true, false)}, &cex));
  CHECK(cex.at("x") == Rational(5));

  CHECK(covered_by_union(interval("x", 3, 2), {}));  // empty zone needs no cover
  CHECK(!covered_by_union(box, {}));
}

TEST_CASE("union coverage skips contradictory members and handles universal ones") {
  LinearSystem falsum;
  falsum.add(lin_leq({}, -1));
  LinearSystem box = interval("x", 0, 10);
  CHECK(covered_by_union(box, {falsum, box}));
  CHECK(!covered_by_union(box, {falsum, interval("x", 0, 9)}));
  LinearSystem universal;
  CHECK(covered_by_union(box, {universal}));
}

TEST_CASE("square split into two triangles is covered") {
  LinearSystem square = interval("x", 0, 1).intersect(interval("y", 0, 1));
  LinearSystem lowerTri = square;
  lowerTri.add(lin_leq({{"x", -1}, {"y", 1}}, 0));  // y <= x
  LinearSystem upperTri = square;
  upperTri.add(lin_leq({{"x", 1}, {"y", -1}}, 0));  // y >= x
  CHECK(covered_by_union(square, {lowerTri, upperTri}));
  LinearSystem strictLower = square;
  strictLower.add(lin_less({{"x", -1}, {"y", 1}}, 0));  // y < x: diagonal now uncovered
  Point cex;
  CHECK(!covered_by_union(square, {strictLower, upperTri.intersect(interval("y", 0, 1, true))},
                          &cex));
  CHECK(cex.at("x") == cex.at("y"));
}

TEST_CASE("random cross-checks between entailment, sampling and coverage") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coeff(-3, 3), bnd(-8, 8), n_cs(1, 4);
  auto random_system = [&] {
    LinearSystem s;
    int n = n_cs(rng);
    for (int i = 0; i < n; ++i) {
      std::map<std::string, Rational> cs;
      cs["x"] = coeff(rng);
      cs["y"] = coeff(rng);
      LinearConstraint c = lin_leq(std::move(cs), bnd(rng));
      c.strict = rng() % 2 == 0;
      s.add(c);
    }
    return s;
  };
  for (int it = 0; it < 300; ++it) {
    LinearSystem a = random_system(), b = random_system();
    bool feas = a.feasible();
    auto p = a.sample();
    CHECK(feas == p.has_value());
    if (p) CHECK(a.admits(*p));
    CHECK(covered_by_union(a, {a}));
    bool subset = a.entails_all(b);
    CHECK(subset == covered_by_union(a, {b}));
    if (p && subset) CHECK(b.admits(*p));
    // Splitting a by any constraint of b and its negation always covers a.
    if (!b.constraints().empty()) {
      LinearSystem with = a, without = a;
      with.add(b.constraints()[0]);
      without.add(b.constraints()[0].negated());
      CHECK(covered_by_union(a, {with, without}));
    }
  }
}
