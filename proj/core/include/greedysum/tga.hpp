#pragma once

#include "greedysum/core.hpp"

#include <cstddef>
#include <vector>

namespace greedysum {

inline constexpr std::size_t kDefaultGreedyCap = 64;

/// The moduli tied at the greedy threshold.
struct TieClass {
    Rational threshold;     ///< modulus of the smallest selected coefficient
    IndexSet above;         ///< indices strictly above the threshold (always selected)
    IndexSet tied;          ///< indices at the threshold
    std::size_t slots = 0;  ///< how many of `tied` each greedy set takes
};

/// All greedy sets of one order. Sets are distinct and in lexicographic order.
struct GreedyOutcome {
    std::vector<IndexSet> sets;
    TieClass tie;
};

/// Every greedy set of x of order m: |L| = m and min_{L}|x_n| >= max_{not L}|x_n|.
///
/// m = 0 yields the single empty set. m > |supp(x)| is a DomainError (the
/// residual is then zero, see residual()); more than `cap` sets raises
/// TieExplosion.
GreedyOutcome greedy_sets(const SparseVector& x, std::size_t m,
                          std::size_t cap = kDefaultGreedyCap);

/// Number of greedy sets of order m without enumerating them: C(t, r) for a
/// tie class of size t with r open slots.
std::size_t greedy_set_count(const SparseVector& x, std::size_t m);

/// ceil(lambda * m), exactly. lambda < 1 is a DomainError.
std::size_t lambda_order(const Rational& lambda, std::size_t m);

/// x - P_L(x).
SparseVector residual(const SparseVector& x, const IndexSet& greedy);

/// sum_{i <= n} x_i e_i; n = 0 gives zero.
SparseVector partial_sum(const SparseVector& x, std::size_t n);

/// Caps each modulus at a, keeping signs. a <= 0 is a DomainError.
SparseVector truncate(const SparseVector& x, const Rational& a);

}  // namespace greedysum
