#include "greedysum/rational.hpp"

#include <cctype>
#include <limits>
#include <optional>
#include <stdexcept>

namespace greedysum {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
}

// Simplest rational in the open interval (lo, hi) with lo >= 0. hi may be
// absent (+infinity).
Rational simplest_nonneg(const Rational& lo, const std::optional<Rational>& hi) {
    mpz_class fl = floor_of(lo);
    Rational next(fl + 1);
    if (!hi || next < *hi) return next;
    // (lo, hi) sits inside [fl, fl + 1]: write s = fl + 1/y with
    // y in (1/(hi - fl), 1/(lo - fl)).
    Rational ylo = Rational(1) / Rational(*hi - Rational(fl));
    std::optional<Rational> yhi;
    if (lo != Rational(fl)) yhi = Rational(1) / Rational(lo - Rational(fl));
    Rational y = simplest_nonneg(ylo, yhi);
    return Rational(fl) + Rational(1) / y;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) bad(text);
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        mpz_class d{std::string(den), 10};
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        q = Rational(mpz_class{std::string(num), 10}, d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            bad(text);
        std::string digits = std::string(whole) + std::string(frac);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        q = Rational(mpz_class(digits.empty() ? std::string("0") : digits, 10), den);
    } else {
        if (!all_digits(s)) bad(text);
        q = Rational(mpz_class(std::string(s), 10));
    }
    q.canonicalize();
    if (negative) q = -q;
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

mpz_class floor_of(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpz_class ceil_of(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::uint64_t floor_u64(const Rational& q) {
    mpz_class f = floor_of(q);
    if (f < 0) throw std::domain_error("floor_u64 of a negative value");
    if (mpz_sizeinbase(f.get_mpz_t(), 2) > 64) throw std::overflow_error("floor_u64 overflow");
    return static_cast<std::uint64_t>(std::stoull(f.get_str()));
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::domain_error("simplest_between needs lo < hi");
    if (lo < 0 && hi > 0) return Rational(0);
    if (hi <= 0) return -simplest_nonneg(Rational(-hi), Rational(-lo));
    return simplest_nonneg(lo, hi);
}

}  // namespace greedysum
