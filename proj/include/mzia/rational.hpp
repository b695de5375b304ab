// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace mzia {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number.  Always normalized: numerator and denominator are
// coprime and the denominator is positive.  All arithmetic is exact; nothing
// in this library ever rounds.
using Rational = boost::multiprecision::cpp_rational;

/// Render as "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "12", "-3", "4.25", "7/2", "-7/2".  Returns nullopt on anything else.
std::optional<Rational> parse_rational(std::string_view text);

/// True iff r has denominator 1.
bool is_integer(const Rational& r);

/// Largest integer <= r.
BigInt floor_int(const Rational& r);

/// Floor division ⌊a/b⌋ for b != 0.
BigInt floor_div(const Rational& a, const Rational& b);

/// Euclidean-style remainder a - b*⌊a/b⌋ (same sign rules as floor_div).
Rational mod_floor(const Rational& a, const Rational& b);

}  // namespace mzia
