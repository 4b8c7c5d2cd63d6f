#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hfree {

/// Exact rational scalar. GMP keeps it canonical: gcd(|num|, den) = 1 and den > 0.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

bool is_integer(const Rational& r);

/// True iff r is an integer >= 0, i.e. r lies in N_0.
bool is_natural(const Rational& r);

}  // namespace hfree
