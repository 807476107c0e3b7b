#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kstab {

// mpq_class keeps values canonical (lowest terms, positive denominator) after
// every arithmetic operation; parse_rational canonicalizes explicitly.
using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms (mpq_class's two-argument constructor does not
/// canonicalize).
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q", "p" or "-p/q". Throws Error(InvalidInput) on junk or q == 0.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline int sign(const Rational& q) { return sgn(q); }

Rational rational_power(const Rational& base, unsigned exponent);
Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Least common multiple of all denominators (1 for an empty list).
Integer common_denominator(const std::vector<Rational>& values);

/// Floor and ceiling of an exact rational.
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

}  // namespace kstab
