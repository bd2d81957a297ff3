#pragma once

#include <gmpxx.h>

#include <string>

namespace gw {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator). GMP keeps mpq_class canonical after every arithmetic op.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" with q omitted when it is 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

/// Integer power with a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);

}  // namespace gw
