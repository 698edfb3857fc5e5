#pragma once

// Exact arithmetic substrate. Rational and Integer are GMP's C++ classes;
// every exact code path in the library goes through these two types.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nefcone {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Builds num/den in canonical form (gcd 1, positive denominator).
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parses "p", "-p", "p/q" (q != 0); surrounding whitespace is ignored.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& r);
/// Throws PreconditionError if r is not an integer.
Integer to_integer(const Rational& r);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);
/// Representative of r modulo 1 in [0, 1).
Rational frac(const Rational& r);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// gcd of the absolute values; 0 for an all-zero vector.
Integer content(const IntVector& v);

int sign(const Rational& r);
int sign(const Integer& z);

RatVector to_rational(const IntVector& v);

} // namespace nefcone
