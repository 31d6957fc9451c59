#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace coinweigh {

/// Exact rational, always kept in canonical (reduced, positive denominator) form.
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// "num/den", denominator always written (e.g. "1/1").
std::string to_fraction_string(const Rational& q);

/// Parses "num/den" or "num".
Rational parse_rational(const std::string& text);

double to_double(const Rational& q);

/// Fixed-point with `places` decimals, e.g. "2.200000".
std::string format_fixed(double value, int places = 6);

/// Shortest form with 6 significant digits, e.g. "2.2", "26.2222".
std::string format_significant(double value, int digits = 6);

/// Rounds to `digits` significant digits (for JSON emission).
double round_significant(double value, int digits = 6);

} // namespace coinweigh
