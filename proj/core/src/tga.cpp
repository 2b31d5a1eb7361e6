#include "greedysum/tga.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace greedysum {

namespace {

// C(n, k), saturating at `limit + 1` so callers can compare against a cap.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t limit) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    mpz_class c = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // C(n - k + i, i) = C(n - k + i - 1, i - 1) * (n - k + i) / i; exact at each step.
        c = c * static_cast<unsigned long>(n - k + i) / static_cast<unsigned long>(i);
        if (c > static_cast<unsigned long>(limit)) return limit + 1;
    }
    return static_cast<std::size_t>(c.get_ui());
}

TieClass tie_class(const SparseVector& x, std::size_t m) {
    TieClass tie;
    if (m == 0) return tie;
    std::vector<Rational> mods = x.moduli();
    std::nth_element(mods.begin(), mods.begin() + static_cast<std::ptrdiff_t>(m - 1), mods.end(),
                     std::greater<>());
    tie.threshold = mods[m - 1];
    std::vector<Index> above;
    std::vector<Index> tied;
    for (const auto& [i, c] : x.entries()) {
        int s = cmp(abs(c), tie.threshold);
        if (s > 0) above.push_back(i);
        else if (s == 0) tied.push_back(i);
    }
    tie.slots = m - above.size();
    tie.above = IndexSet(std::move(above));
    tie.tied = IndexSet(std::move(tied));
    return tie;
}

void check_order(const SparseVector& x, std::size_t m) {
    if (m > x.support_size())
        throw DomainError("greedy set order " + std::to_string(m) + " exceeds support size " +
                          std::to_string(x.support_size()) +
                          "; the residual after selecting the whole support is zero");
}

}  // namespace

GreedyOutcome greedy_sets(const SparseVector& x, std::size_t m, std::size_t cap) {
    check_order(x, m);
    GreedyOutcome out;
    out.tie = tie_class(x, m);
    if (m == 0) {
        out.sets.emplace_back();
        return out;
    }
    const auto& tied = out.tie.tied.elements();
    const std::size_t count = binomial_capped(tied.size(), out.tie.slots, cap);
    if (count > cap)
        throw TieExplosion("more than " + std::to_string(cap) + " greedy sets of order " + std::to_string(m) +
                           " (" + std::to_string(tied.size()) + " moduli tied for " +
                           std::to_string(out.tie.slots) + " slots)");

    // Lexicographic walk over slot-subsets of the tie class.
    std::vector<std::size_t> pick(out.tie.slots);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    const std::vector<Index> base(out.tie.above.begin(), out.tie.above.end());
    while (true) {
        std::vector<Index> set = base;
        for (std::size_t k : pick) set.push_back(tied[k]);
        out.sets.emplace_back(std::move(set));
        // Advance to the next combination.
        std::size_t r = pick.size();
        while (r > 0 && pick[r - 1] == tied.size() - pick.size() + r - 1) --r;
        if (r == 0) break;
        ++pick[r - 1];
        for (std::size_t k = r; k < pick.size(); ++k) pick[k] = pick[k - 1] + 1;
    }
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

std::size_t greedy_set_count(const SparseVector& x, std::size_t m) {
    check_order(x, m);
    if (m == 0) return 1;
    TieClass t = tie_class(x, m);
    return binomial_capped(t.tied.size(), t.slots, std::numeric_limits<std::size_t>::max() - 1);
}

std::size_t lambda_order(const Rational& lambda, std::size_t m) {
    if (lambda < 1) throw DomainError("lambda must be at least 1");
    return floor_u64(Rational(ceil_of(Rational(lambda * m))));
}

SparseVector residual(const SparseVector& x, const IndexSet& greedy) {
    std::vector<SparseVector::Entry> e;
    for (const auto& entry : x.entries())
        if (!greedy.contains(entry.first)) e.push_back(entry);
    return SparseVector(std::move(e));
}

SparseVector partial_sum(const SparseVector& x, std::size_t n) {
    std::vector<SparseVector::Entry> e;
    for (const auto& entry : x.entries())
        if (entry.first <= n) e.push_back(entry);
    return SparseVector(std::move(e));
}

SparseVector truncate(const SparseVector& x, const Rational& a) {
    if (a <= 0) throw DomainError("truncation level must be positive");
    std::vector<SparseVector::Entry> e;
    for (const auto& [i, c] : x.entries()) {
        if (abs(c) > a) e.emplace_back(i, c > 0 ? a : Rational(-a));
        else e.emplace_back(i, c);
    }
    return SparseVector(std::move(e));
}

}  // namespace greedysum
