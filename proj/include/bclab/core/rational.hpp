#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace bclab {

/// Exact rational, always kept in canonical form (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;

/// A rational used as a probability. Same representation as Rational; the
/// [0, 1] range is checked where values enter the library (parse_prob,
/// model constructors).
using Prob = Rational;

/// Parses "num/den" or a plain integer. Throws ConfigError on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// parse_rational plus a [0, 1] range check.
Prob parse_prob(std::string_view text);

/// Canonical "num/den" form, "/1" included for integers.
std::string to_string(const Rational& value);

/// Nearest-or-truncated double; within one ulp of the exact value.
double to_double(const Rational& value);

bool is_probability(const Rational& value);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

mpz_class to_mpz(std::uint64_t value);
Rational from_u64(std::uint64_t value);

/// 1 / base^exponent.
Rational inverse_power(unsigned base, unsigned exponent);

/// Decimal tolerance 10^{-digits} as an exact rational.
Rational decimal_tolerance(unsigned digits);

}  // namespace bclab
