#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tautres {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Accepts "p", "p/q", optionally signed. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

// Generalized binomial C(-m, j) = (-1)^j C(m+j-1, j), m >= 1.
Integer negative_binomial(unsigned m, unsigned j);

}  // namespace tautres
