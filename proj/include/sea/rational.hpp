#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace sea {

/// Exact rational scalar. GMP keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p/q" or "p". Rejects zero denominators and anything that is
/// not already in lowest terms with a positive denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// The rational square root of a non-negative q, if q is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Largest k / 2^bits with (k / 2^bits)^2 <= q, found by bisection over k.
/// Requires 0 <= q <= 1.
Rational dyadic_sqrt_floor(const Rational& q, unsigned bits);

inline bool in_unit_interval(const Rational& q) { return q >= 0 && q <= 1; }

}  // namespace sea
