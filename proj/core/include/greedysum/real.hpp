#pragma once

#include "greedysum/rational.hpp"

#include <compare>
#include <iosfwd>
#include <string>
#include <variant>

namespace greedysum {

/// Relative tolerance used whenever a comparison involves an inexact value.
inline constexpr double kFloatTolerance = 1e-9;

/// A norm value or ratio: exact when every input was exact, a double otherwise.
///
/// Arithmetic between two exact values stays exact; anything touching a
/// double degrades to a double. Infinity is only representable inexactly and
/// is used for "positive over zero" ratios.
class Real {
public:
    Real() : value_(Rational(0)) {}
    Real(Rational q) : value_(std::move(q)) {}  // NOLINT(implicit)
    Real(long v) : value_(Rational(v)) {}        // NOLINT(implicit)

    static Real approx(double v) { return Real(Tag{}, v); }
    static Real infinity();

    bool is_exact() const { return std::holds_alternative<Rational>(value_); }
    bool is_infinite() const;
    bool is_zero() const;

    /// Throws std::logic_error when the value is inexact.
    const Rational& exact() const;
    double to_double() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    /// Throws std::domain_error on a zero divisor; use ratio() for the
    /// infinity convention.
    friend Real operator/(const Real& a, const Real& b);

    /// Exact ordering when both sides are exact, plain double ordering
    /// otherwise (no tolerance).
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);
    friend bool operator==(const Real& a, const Real& b);

private:
    struct Tag {};
    Real(Tag, double v) : value_(v) {}

    std::variant<Rational, double> value_;
};

/// num / den, with 0/0 = 0 and positive/0 = +infinity.
Real ratio(const Real& num, const Real& den);

Real max(const Real& a, const Real& b);

/// a <= b: exact when both are exact, else a <= b + tol * max(|a|, |b|, 1).
bool approx_le(const Real& a, const Real& b, double tol = kFloatTolerance);

/// |a - b| / max(|a|, |b|), 0 when both are zero. Exact inputs that are equal
/// give exactly 0.
double relative_difference(const Real& a, const Real& b);

/// Exact values print as "num/den"; inexact ones with 17 significant digits.
std::string to_string(const Real& r);
std::ostream& operator<<(std::ostream& os, const Real& r);

}  // namespace greedysum
