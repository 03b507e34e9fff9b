#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace spheremaps::exactpoly {

/// Arbitrary precision rational. Every value produced through this module is
/// canonical: denominator > 0 and gcd(|num|, den) = 1, so `==` is structural.
using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in canonical form. Throws ParseError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// "num/den", always with an explicit denominator ("3/1").
std::string to_string(const Rational& q);

/// Accepts "num/den" or a bare integer; the result is canonicalized.
Rational parse_rational(std::string_view text);

}  // namespace spheremaps::exactpoly
