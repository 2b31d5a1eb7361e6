#include "greedysum/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

namespace greedysum {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

Index parse_index(std::string_view s) {
    s = trim(s);
    Index v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed index: '" + std::string(s) + "'");
    if (v == 0) throw DomainError("indices start at 1");
    return v;
}

// Strip optional surrounding braces/parentheses.
std::string_view unwrap(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && ((s.front() == '{' && s.back() == '}') || (s.front() == '(' && s.back() == ')')))
        s = trim(s.substr(1, s.size() - 2));
    return s;
}

}  // namespace

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::initializer_list<Index> elems) : IndexSet(std::vector<Index>(elems)) {}

IndexSet::IndexSet(std::vector<Index> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    if (!elems_.empty() && elems_.front() == 0) throw DomainError("indices start at 1");
}

IndexSet IndexSet::range(Index lo, Index hi) {
    if (lo == 0) throw DomainError("indices start at 1");
    IndexSet out;
    if (hi < lo) return out;
    out.elems_.reserve(hi - lo + 1);
    for (Index i = lo; i <= hi; ++i) out.elems_.push_back(i);
    return out;
}

Index IndexSet::min() const {
    if (elems_.empty()) throw DomainError("min of the empty set");
    return elems_.front();
}

Index IndexSet::max() const {
    if (elems_.empty()) throw DomainError("max of the empty set");
    return elems_.back();
}

bool IndexSet::contains(Index i) const { return std::binary_search(elems_.begin(), elems_.end(), i); }

IndexSet IndexSet::unite(const IndexSet& other) const {
    IndexSet out;
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elems_));
    return out;
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
    IndexSet out;
    std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elems_));
    return out;
}

IndexSet IndexSet::minus(const IndexSet& other) const {
    IndexSet out;
    std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out.elems_));
    return out;
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
}

// ---------------------------------------------------------------- Interval

Interval::Interval(Index lo, Index hi) {
    if (lo == 0 || hi < lo) throw DomainError("interval needs 1 <= lo <= hi");
    bounds_ = std::make_pair(lo, hi);
}

Index Interval::lo() const {
    if (!bounds_) throw DomainError("lo of the empty interval");
    return bounds_->first;
}

Index Interval::hi() const {
    if (!bounds_) throw DomainError("hi of the empty interval");
    return bounds_->second;
}

std::size_t Interval::size() const { return bounds_ ? bounds_->second - bounds_->first + 1 : 0; }

bool Interval::contains(Index i) const { return bounds_ && bounds_->first <= i && i <= bounds_->second; }

IndexSet Interval::to_index_set() const {
    return bounds_ ? IndexSet::range(bounds_->first, bounds_->second) : IndexSet();
}

// ------------------------------------------------------------- SignPattern

void SignPattern::set(Index i, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("signs must be +1 or -1");
    if (i == 0) throw DomainError("indices start at 1");
    signs_[i] = sign;
}

int SignPattern::at(Index i) const {
    auto it = signs_.find(i);
    return it == signs_.end() ? 1 : it->second;
}

// ------------------------------------------------------------ SparseVector

SparseVector::SparseVector(std::initializer_list<Entry> entries)
    : SparseVector(std::vector<Entry>(entries)) {}

SparseVector::SparseVector(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& [i, c] : entries) {
        if (i == 0) throw DomainError("indices start at 1");
        if (!entries_.empty() && entries_.back().first == i)
            entries_.back().second += c;
        else
            entries_.emplace_back(i, std::move(c));
        if (entries_.back().second == 0) entries_.pop_back();
    }
}

SparseVector SparseVector::from_dense(std::span<const Rational> coeffs) {
    std::vector<Entry> e;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0) e.emplace_back(k + 1, coeffs[k]);
    return SparseVector(std::move(e));
}

SparseVector SparseVector::indicator(const IndexSet& a) { return signed_indicator(a, SignPattern()); }

SparseVector SparseVector::signed_indicator(const IndexSet& a, const SignPattern& eps) {
    SparseVector out;
    out.entries_.reserve(a.size());
    for (Index i : a) out.entries_.emplace_back(i, Rational(eps.at(i)));
    return out;
}

IndexSet SparseVector::support() const {
    std::vector<Index> idx;
    idx.reserve(entries_.size());
    for (const auto& e : entries_) idx.push_back(e.first);
    return IndexSet(std::move(idx));
}

Index SparseVector::max_index() const { return entries_.empty() ? 0 : entries_.back().first; }

Rational SparseVector::coefficient(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index k) { return e.first < k; });
    return (it != entries_.end() && it->first == i) ? it->second : Rational(0);
}

std::vector<Rational> SparseVector::moduli() const {
    std::vector<Rational> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(abs(e.second));
    return out;
}

namespace {
SparseVector combine(const SparseVector& a, const SparseVector& b, int sign) {
    std::vector<SparseVector::Entry> e(a.entries().begin(), a.entries().end());
    for (const auto& [i, c] : b.entries()) e.emplace_back(i, sign > 0 ? c : Rational(-c));
    return SparseVector(std::move(e));
}
}  // namespace

SparseVector operator+(const SparseVector& a, const SparseVector& b) { return combine(a, b, 1); }
SparseVector operator-(const SparseVector& a, const SparseVector& b) { return combine(a, b, -1); }

SparseVector operator*(const Rational& c, const SparseVector& x) {
    SparseVector out;
    if (c == 0) return out;
    out.entries_.reserve(x.entries_.size());
    for (const auto& [i, v] : x.entries_) out.entries_.emplace_back(i, Rational(c * v));
    return out;
}

// -------------------------------------------------------------- primitives

std::size_t spread(const IndexSet& a) { return a.empty() ? 0 : a.max() - a.min() + 1; }

bool surrounds(const IndexSet& b, const IndexSet& a) {
    if (a.empty()) return true;
    auto it = std::lower_bound(b.begin(), b.end(), a.min());
    return it == b.end() || *it > a.max();
}

SparseVector project(const SparseVector& x, const IndexSet& a) {
    std::vector<SparseVector::Entry> e;
    for (const auto& entry : x.entries())
        if (a.contains(entry.first)) e.push_back(entry);
    return SparseVector(std::move(e));
}

Rational sup_norm(const SparseVector& x) {
    Rational best(0);
    for (const auto& [i, c] : x.entries()) best = std::max(best, abs(c));
    return best;
}

// ---------------------------------------------------------------- literals

SparseVector parse_vector(std::string_view text) {
    text = unwrap(text);
    std::vector<SparseVector::Entry> e;
    if (text.empty()) return SparseVector();
    for (auto item : split(text, ',')) {
        auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("vector entries look like index:value, got '" + std::string(item) + "'");
        e.emplace_back(parse_index(item.substr(0, colon)), parse_rational(item.substr(colon + 1)));
    }
    return SparseVector(std::move(e));
}

IndexSet parse_index_set(std::string_view text) {
    text = unwrap(text);
    std::vector<Index> out;
    if (text.empty()) return IndexSet();
    for (auto item : split(text, ',')) {
        if (auto dots = item.find(".."); dots != std::string_view::npos) {
            Index lo = parse_index(item.substr(0, dots));
            Index hi = parse_index(item.substr(dots + 2));
            if (hi < lo) throw std::invalid_argument("empty range '" + std::string(item) + "'");
            for (Index i = lo; i <= hi; ++i) out.push_back(i);
        } else {
            out.push_back(parse_index(item));
        }
    }
    return IndexSet(std::move(out));
}

SignPattern parse_signs(std::string_view text) {
    text = unwrap(text);
    SignPattern s;
    if (text.empty()) return s;
    for (auto item : split(text, ',')) {
        auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("signs look like index:+1, got '" + std::string(item) + "'");
        Rational v = parse_rational(item.substr(colon + 1));
        if (v != 1 && v != -1) throw DomainError("signs must be +1 or -1");
        s.set(parse_index(item.substr(0, colon)), v > 0 ? 1 : -1);
    }
    return s;
}

std::string to_string(const SparseVector& x) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : x.entries()) {
        if (!first) os << ',';
        os << i << ':' << to_string(c);
        first = false;
    }
    return os.str();
}

std::string to_string(const IndexSet& a) {
    std::ostringstream os;
    os << '{';
    // Runs of three or more print as lo..hi.
    auto elems = a.elements();
    for (std::size_t k = 0; k < elems.size();) {
        std::size_t run = k;
        while (run + 1 < elems.size() && elems[run + 1] == elems[run] + 1) ++run;
        if (k) os << ',';
        if (run - k >= 2) {
            os << elems[k] << ".." << elems[run];
        } else {
            os << elems[k];
            if (run > k) os << ',' << elems[run];
        }
        k = run + 1;
    }
    os << '}';
    return os.str();
}

std::string to_string(const SignPattern& s) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, v] : s.entries()) {
        if (!first) os << ',';
        os << i << ':' << (v > 0 ? "1" : "-1");
        first = false;
    }
    return os.str();
}

}  // namespace greedysum
