#pragma once

// Exact integer and rational scalars plus the few helpers every other
// module needs: parsing, printing, integer square roots and outward rounding.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace ccf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or a decimal literal such as "-1.25" or "3e-2" exactly.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

int sign(const Rational& q);
int sign(const Integer& z);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Number of bits in |z| (0 for z = 0).
std::size_t bit_length(const Integer& z);

/// Largest dyadic rational with `bits` fractional bits below (or above) q.
/// Precision is relative: the fractional bit count grows when |q| is small.
Rational round_down(const Rational& q, unsigned bits);
Rational round_up(const Rational& q, unsigned bits);

/// Rational bounds lo <= sqrt(q) <= hi with hi - lo <= 2^-bits * (1 + sqrt(q)).
/// q must be non-negative.
void sqrt_bounds(const Rational& q, unsigned bits, Rational& lo, Rational& hi);

/// Exact square root when q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

/// Writes n = s^2 * d with d squarefree (n > 0).  Trial division; n is small
/// wherever this is used (field discriminants, products of norms).
void split_square(const Integer& n, Integer& s, Integer& d);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& q, unsigned e);

double to_double(const Rational& q);

}  // namespace ccf
