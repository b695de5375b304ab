// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "mzia/rational.hpp"

using namespace mzia;

TEST_CASE("parse accepts integers, decimals and fractions") {
  CHECK(*parse_rational("12") == Rational(12));
  CHECK(*parse_rational("-3") == Rational(-3));
  CHECK(*parse_rational("+7") == Rational(7));
  CHECK(*parse_rational("4.25") == Rational(17, 4));
  CHECK(*parse_rational("-0.5") == Rational(-1, 2));
  CHECK(*parse_rational("7/2") == Rational(7, 2));
  CHECK(*parse_rational("-7/2") == Rational(-7, 2));
  CHECK(*parse_rational("2/4") == Rational(1, 2));
  CHECK(*parse_rational("0") == Rational(0));
  CHECK(*parse_rational("0.0") == Rational(0));
}

TEST_CASE("parse rejects malformed text") {
  CHECK(!parse_rational(""));
  CHECK(!parse_rational("-"));
  CHECK(!parse_rational("abc"));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("1.2.3"));
  CHECK(!parse_rational("--3"));
  CHECK(!parse_rational("1 / 2"));
  CHECK(!parse_rational("3."));
  CHECK(!parse_rational("/2"));
  CHECK(!parse_rational("1e3"));
}

TEST_CASE("to_string renders normalized form") {
  CHECK(to_string(Rational(3)) == "3");
  CHECK(to_string(Rational(-3)) == "-3");
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("integer predicates and floor") {
  CHECK(is_integer(Rational(4)));
  CHECK(!is_integer(Rational(1, 2)));
  CHECK(floor_int(Rational(7, 2)) == 3);
  CHECK(floor_int(Rational(-7, 2)) == -4);
  CHECK(floor_int(Rational(4)) == 4);
  CHECK(floor_int(Rational(-4)) == -4);
  CHECK(floor_div(Rational(7), Rational(2)) == 3);
  CHECK(floor_div(Rational(-7), Rational(2)) == -4);
  CHECK(mod_floor(Rational(7), Rational(2)) == Rational(1));
  CHECK(mod_floor(Rational(-7), Rational(2)) == Rational(1));
  CHECK(mod_floor(Rational(7, 2), Rational(1)) == Rational(1, 2));
}

TEST_CASE("division identity a == b*floor_div(a,b) + mod_floor(a,b)") {
  std::mt19937_64 rng(20260823);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 12);
  for (int i = 0; i < 500; ++i) {
    Rational a(num(rng), den(rng));
    Rational b(num(rng), den(rng));
    if (b == 0) continue;
    Rational rem = mod_floor(a, b);
    CHECK(a == b * Rational(floor_div(a, b)) + rem);
    if (b > 0) {
      CHECK(rem >= 0);
      CHECK(rem < b);
    }
  }
}
