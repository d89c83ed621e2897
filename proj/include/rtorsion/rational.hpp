#pragma once

#include <gmpxx.h>

#include <string>

namespace rtorsion {

// Exact arithmetic scalar. GMP keeps mpq values in canonical form
// (gcd-reduced, positive denominator) as long as they are produced by
// arithmetic; values built from raw strings must go through rat_parse.
using Rational = mpq_class;

// Parses "a" or "a/b" with b > 0 (decimal, optional leading '-').
// Non-canonical inputs like "4/6" are accepted and reduced.
// Throws std::invalid_argument on anything else.
Rational rat_parse(const std::string& text);

// Serializes as "a/b" with b > 0, or "a" when the denominator is 1.
std::string rat_str(const Rational& value);

int rat_sign(const Rational& value);

}  // namespace rtorsion
