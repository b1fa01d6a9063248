#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pebblekit {

using Rational = mpq_class;

/// 2^{-d} as an exact rational.
Rational pow2_inv(std::int64_t d);

/// Canonical "p/q" form; integers are written "p/1".
std::string to_string(const Rational& q);

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on junk or a zero denominator.
Rational parse_rational(std::string_view text);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

double to_double(const Rational& q);

}  // namespace pebblekit
