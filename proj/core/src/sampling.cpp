#include "greedysum/sampling.hpp"

#include "greedysum/errors.hpp"

#include <algorithm>
#include <set>

namespace greedysum {

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t instance) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(instance), static_cast<std::uint32_t>(instance >> 32)};
    return std::mt19937_64(seq);
}

SparseVector sample_vector(std::mt19937_64& rng, const VectorSampler& sampler) {
    if (sampler.window.empty()) throw DomainError("sampler window is empty");
    if (sampler.max_numerator < 1 || sampler.max_denominator < 1)
        throw DomainError("sampler coefficient grid is empty");
    const std::size_t hi = std::min(sampler.max_support, sampler.window.size());
    const std::size_t lo = std::min(sampler.min_support, hi);
    std::uniform_int_distribution<std::size_t> size_dist(lo, hi);
    std::vector<Index> picked;
    std::sample(sampler.window.begin(), sampler.window.end(), std::back_inserter(picked), size_dist(rng), rng);

    std::uniform_int_distribution<int> num(1, sampler.max_numerator);
    std::uniform_int_distribution<int> den(1, sampler.max_denominator);
    std::bernoulli_distribution flip(0.5);
    std::vector<SparseVector::Entry> entries;
    for (Index i : picked) {
        Rational c(num(rng), den(rng));
        c.canonicalize();
        if (sampler.random_signs && flip(rng)) c = -c;
        entries.emplace_back(i, c);
    }
    return SparseVector(std::move(entries));
}

SparseVector sample_dominated(std::mt19937_64& rng, const SparseVector& x) {
    std::uniform_int_distribution<int> factor(0, 4);
    std::bernoulli_distribution flip(0.5);
    std::vector<SparseVector::Entry> entries;
    for (const auto& [i, c] : x.entries()) {
        Rational v = c * Rational(factor(rng), 4);
        if (flip(rng)) v = -v;
        entries.emplace_back(i, v);
    }
    return SparseVector(std::move(entries));
}

namespace {

std::vector<Index> range_window(Index lo, Index hi) {
    std::vector<Index> w;
    for (Index i = lo; i <= hi; ++i) w.push_back(i);
    return w;
}

std::vector<Index> xpg_window(const XpgParams& params) {
    const std::size_t levels = params.g.size();
    // Largest index the norm can handle with the available levels.
    Index limit = levels >= 2 ? floor_u64(params.a1 * params.level(levels - 1)) : 2;
    limit = std::min<Index>(limit, 900);
    std::set<Index> w;
    auto add = [&](Index lo, Index hi) {
        for (Index i = std::max<Index>(lo, 1); i <= std::min(hi, limit); ++i) w.insert(i);
    };
    add(1, 20);
    for (std::size_t j = 1; j + 1 <= levels; ++j) {
        const Index edge = floor_u64(params.a1 * params.level(j));
        add(edge > 3 ? edge - 3 : 1, edge + 4);
        const Index next = params.level(j + 1);
        add(next > 3 ? next - 3 : 1, floor_u64(next + params.a2 * params.level(j)) + 3);
    }
    return {w.begin(), w.end()};
}

}  // namespace

VectorSampler default_sampler(const SpaceSpec& spec) {
    VectorSampler s;
    struct V {
        VectorSampler& s;
        void operator()(const XpgSpace& sp) const {
            s.window = xpg_window(sp.params);
            s.max_support = 10;
        }
        void operator()(const XwSpace&) const {
            s.window = range_window(1, 40);
            s.max_support = 10;
        }
        void operator()(const XisoSpace&) const { s.window = range_window(1, 8); }
        void operator()(const XsSpace&) const {
            s.window = range_window(1, 150);
            s.max_support = 10;
        }
    };
    std::visit(V{s}, spec.kind());
    return s;
}

}  // namespace greedysum
