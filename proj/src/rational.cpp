// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/rational.hpp"

#include <cctype>
#include <sstream>

namespace mzia {

std::string to_string(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

BigInt floor_int(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  // cpp_int division truncates toward zero; fix up negatives.
  if (q * denominator(r) != numerator(r) && numerator(r) < 0) q -= 1;
  return q;
}

BigInt floor_div(const Rational& a, const Rational& b) { return floor_int(Rational(a / b)); }

Rational mod_floor(const Rational& a, const Rational& b) {
  return a - b * Rational(floor_div(a, b));
}

namespace {

bool parse_uint(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  out = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    out = out * 10 + (c - '0');
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool neg = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num, den;
    if (!parse_uint(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_uint(text.substr(slash + 1), den) || den == 0) return std::nullopt;
    value = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    BigInt whole, frac;
    std::string_view fpart = text.substr(dot + 1);
    if (!parse_uint(text.substr(0, dot), whole)) return std::nullopt;
    if (!parse_uint(fpart, frac)) return std::nullopt;
    BigInt scale = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) scale *= 10;
    value = Rational(whole) + Rational(frac, scale);
  } else {
    BigInt whole;
    if (!parse_uint(text, whole)) return std::nullopt;
    value = Rational(whole);
  }
  return neg ? Rational(-value) : value;
}

}  // namespace mzia
