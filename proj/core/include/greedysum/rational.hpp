#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace greedysum {

/// Exact rational scalar. Always kept in canonical form.
using Rational = mpq_class;

/// Parses "num", "num/den" or a finite decimal such as "-0.25".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "num" when the denominator is 1, "num/den" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// floor(q) and ceil(q) as arbitrary-precision integers.
mpz_class floor_of(const Rational& q);
mpz_class ceil_of(const Rational& q);

/// floor(q) for a nonnegative q that fits in 64 bits.
std::uint64_t floor_u64(const Rational& q);

Rational abs(const Rational& q);

/// The rational of smallest denominator (then smallest numerator) strictly
/// inside (lo, hi). Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace greedysum
