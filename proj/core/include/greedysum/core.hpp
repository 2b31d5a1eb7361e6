#pragma once

#include "greedysum/errors.hpp"
#include "greedysum/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace greedysum {

/// Basis index. Indices start at 1.
using Index = std::uint64_t;

/// Finite subset of the positive integers, stored sorted and duplicate-free.
class IndexSet {
public:
    using const_iterator = std::vector<Index>::const_iterator;

    IndexSet() = default;
    IndexSet(std::initializer_list<Index> elems);
    explicit IndexSet(std::vector<Index> elems);

    /// {lo, lo+1, ..., hi}; empty when hi < lo.
    static IndexSet range(Index lo, Index hi);

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    /// Both throw DomainError on the empty set.
    Index min() const;
    Index max() const;
    bool contains(Index i) const;

    const_iterator begin() const { return elems_.begin(); }
    const_iterator end() const { return elems_.end(); }
    std::span<const Index> elements() const { return elems_; }

    IndexSet unite(const IndexSet& other) const;
    IndexSet intersect(const IndexSet& other) const;
    IndexSet minus(const IndexSet& other) const;
    bool is_subset_of(const IndexSet& other) const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;
    friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

private:
    std::vector<Index> elems_;
};

/// A contiguous run [lo, hi] of indices, or the empty interval.
class Interval {
public:
    Interval() = default;
    /// Throws DomainError unless 1 <= lo <= hi.
    Interval(Index lo, Index hi);

    static Interval empty_interval() { return Interval(); }

    bool empty() const { return !bounds_.has_value(); }
    Index lo() const;
    Index hi() const;
    std::size_t size() const;
    bool contains(Index i) const;
    IndexSet to_index_set() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    std::optional<std::pair<Index, Index>> bounds_;
};

/// Signs +1/-1 per index. Indices without an explicit entry read as +1.
class SignPattern {
public:
    SignPattern() = default;
    /// Throws DomainError for a value other than +1 or -1.
    void set(Index i, int sign);
    int at(Index i) const;
    const std::map<Index, int>& entries() const { return signs_; }

    friend bool operator==(const SignPattern&, const SignPattern&) = default;

private:
    std::map<Index, int> signs_;
};

/// Finitely supported sequence of rational coefficients. Zeros are never
/// stored, entries are sorted by index.
class SparseVector {
public:
    using Entry = std::pair<Index, Rational>;

    SparseVector() = default;
    /// Duplicate indices are summed; zero results are dropped. Index 0 is a
    /// DomainError.
    SparseVector(std::initializer_list<Entry> entries);
    explicit SparseVector(std::vector<Entry> entries);

    /// Dense constructor: coefficient k of `coeffs` goes to index k+1.
    static SparseVector from_dense(std::span<const Rational> coeffs);
    /// 1_A.
    static SparseVector indicator(const IndexSet& a);
    /// 1_{eps A} = sum of eps_n e_n over n in A.
    static SparseVector signed_indicator(const IndexSet& a, const SignPattern& eps);

    bool is_zero() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    IndexSet support() const;
    /// Largest index in the support, 0 for the zero vector.
    Index max_index() const;
    Rational coefficient(Index i) const;
    std::span<const Entry> entries() const { return entries_; }

    /// |coefficients| in index order.
    std::vector<Rational> moduli() const;

    friend SparseVector operator+(const SparseVector& a, const SparseVector& b);
    friend SparseVector operator-(const SparseVector& a, const SparseVector& b);
    friend SparseVector operator*(const Rational& c, const SparseVector& x);

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    std::vector<Entry> entries_;
};

/// s(A): max A - min A + 1, or 0 for the empty set.
std::size_t spread(const IndexSet& a);

/// True when A is empty or B misses [min A, max A].
bool surrounds(const IndexSet& b, const IndexSet& a);

/// P_A(x).
SparseVector project(const SparseVector& x, const IndexSet& a);

/// max |x_n|, 0 for the zero vector.
Rational sup_norm(const SparseVector& x);

/// Literal forms used by the CLI, configs and reports.
///   vector:    "16:1,17:-1/2"  (empty string is the zero vector)
///   index set: "1,3,5" or ranges "16..19" (mixed allowed, "{}" or "" empty)
///   signs:     "3:-1,5:1"
SparseVector parse_vector(std::string_view text);
IndexSet parse_index_set(std::string_view text);
SignPattern parse_signs(std::string_view text);
std::string to_string(const SparseVector& x);
std::string to_string(const IndexSet& a);
std::string to_string(const SignPattern& s);

}  // namespace greedysum
