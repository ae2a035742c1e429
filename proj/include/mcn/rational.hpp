#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mcn {

// Exact rationals. mpq_class keeps values canonical after arithmetic.
using Rational = mpq_class;
using Integer = std::int64_t;

// A point of the cube [0,1]^n, one coordinate per variable.
using Point = std::vector<Rational>;

// "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);

// Comma-separated coordinates, e.g. "1/3,1/2".
std::string to_string(const Point& p);

// Parses "p/q" or "p" (optional sign). Throws InputError on malformed text
// or a zero denominator.
Rational parse_rational(std::string_view text);

// Parses a comma-separated list of rationals.
Point parse_point(std::string_view text);

bool in_unit_cube(const Point& p);

// Overflow-checked integer arithmetic for affine coefficients.
Integer checked_add(Integer a, Integer b);
Integer checked_mul(Integer a, Integer b);

}  // namespace mcn
