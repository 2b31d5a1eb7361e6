#include "greedysum/real.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace greedysum {

Real Real::infinity() { return approx(std::numeric_limits<double>::infinity()); }

bool Real::is_infinite() const {
    return !is_exact() && std::isinf(std::get<double>(value_));
}

bool Real::is_zero() const {
    return is_exact() ? std::get<Rational>(value_) == 0 : std::get<double>(value_) == 0.0;
}

const Rational& Real::exact() const {
    if (!is_exact()) throw std::logic_error("Real::exact() on an inexact value");
    return std::get<Rational>(value_);
}

double Real::to_double() const {
    return is_exact() ? greedysum::to_double(std::get<Rational>(value_)) : std::get<double>(value_);
}

Real operator+(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Rational(a.exact() + b.exact());
    return Real::approx(a.to_double() + b.to_double());
}

Real operator-(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Rational(a.exact() - b.exact());
    return Real::approx(a.to_double() - b.to_double());
}

Real operator*(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Rational(a.exact() * b.exact());
    return Real::approx(a.to_double() * b.to_double());
}

Real operator/(const Real& a, const Real& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_exact() && b.is_exact()) return Rational(a.exact() / b.exact());
    return Real::approx(a.to_double() / b.to_double());
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) {
        int c = cmp(a.exact(), b.exact());
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    return a.to_double() <=> b.to_double();
}

bool operator==(const Real& a, const Real& b) { return (a <=> b) == 0; }

Real ratio(const Real& num, const Real& den) {
    if (den.is_zero()) return num.is_zero() ? Real(0L) : Real::infinity();
    return num / den;
}

Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

bool approx_le(const Real& a, const Real& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact();
    double x = a.to_double();
    double y = b.to_double();
    if (x <= y) return true;
    if (std::isinf(x) || std::isinf(y)) return false;
    return x <= y + tol * std::max({std::fabs(x), std::fabs(y), 1.0});
}

double relative_difference(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) {
        if (a.exact() == b.exact()) return 0.0;
        Rational scale = std::max(abs(a.exact()), abs(b.exact()));
        return to_double(Rational(abs(Rational(a.exact() - b.exact())) / scale));
    }
    double x = a.to_double();
    double y = b.to_double();
    if (x == y) return 0.0;
    return std::fabs(x - y) / std::max(std::fabs(x), std::fabs(y));
}

std::string to_string(const Real& r) {
    if (r.is_exact()) return to_string(r.exact());
    if (r.is_infinite()) return r.to_double() > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << r.to_double();
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Real& r) { return os << to_string(r); }

}  // namespace greedysum
