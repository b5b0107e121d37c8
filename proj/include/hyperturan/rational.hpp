#pragma once

#include <gmpxx.h>

#include <string>

namespace hyperturan {

using Rational = mpq_class;

/// n! as an exact integer.
Rational factorial(int n);

/// base^exp for exp >= 0.
Rational power(const Rational& base, int exp);

/// r!/r^r, the blowup density of a single r-edge.
Rational single_edge_density(int r);

/// Closest fraction with denominator <= max_denominator (continued fractions).
Rational best_rational(double value, long max_denominator);

/// "p/q" (or "p" for integers), the serialization used in reports.
std::string to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

}  // namespace hyperturan
