#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gapforge {

// Exact rational; GMP keeps results of arithmetic in lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "p", "p/q" and finite decimals such as "-1.25".
Rational parse_rational(std::string_view text);

Rational make_rational(long num, long den = 1);

Integer floor_of(const Rational& r);

Rational power_of_two(int exponent);

// Floor of b / a plus one: the smallest integer B with B * a > b for a > 0.
Integer dominating_multiplier(const Rational& b, const Rational& a);

Rational dot(const std::vector<Rational>& u, const std::vector<Rational>& v);

// Least common multiple of all denominators.
Integer common_denominator(const std::vector<Rational>& values);

}  // namespace gapforge
