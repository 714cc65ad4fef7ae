#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace pqsurf {

/// Exact arbitrary-precision rational number.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational &r) { return r.get_den() == 1; }

/// True when r is an integer >= 1.
inline bool is_positive_integer(const Rational &r) {
  return is_integer(r) && sgn(r) > 0;
}

/// Value of an integral rational as int64; nullopt when not integral or out of range.
std::optional<std::int64_t> to_int64(const Rational &r);

Integer floor(const Rational &r);

/// Renders as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational &r);

/// Parses "p/q" or "p" with optional surrounding whitespace.
Rational parse_rational(const std::string &text);

} // namespace pqsurf
