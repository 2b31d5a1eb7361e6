#pragma once

#include "greedysum/core.hpp"
#include "greedysum/spaces.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace greedysum {

/// Describes how random vectors are drawn. Coefficients come from the grid
/// {±k/d : 1 <= k <= max_numerator, 1 <= d <= max_denominator}.
struct VectorSampler {
    std::vector<Index> window;  ///< candidate support indices
    std::size_t min_support = 1;
    std::size_t max_support = 6;
    int max_numerator = 12;
    int max_denominator = 4;
    bool random_signs = true;
};

/// Generator for instance `instance` of a run seeded with `seed`. Independent
/// of evaluation order, so results do not depend on how work is split.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t instance);

SparseVector sample_vector(std::mt19937_64& rng, const VectorSampler& sampler);

/// A vector dominated coordinatewise by x: same support subset, moduli
/// scaled by a random factor in [0, 1] (signs may flip).
SparseVector sample_dominated(std::mt19937_64& rng, const SparseVector& x);

/// Windows that exercise each space and stay within the oracle budget:
/// Xpg: blocks around a1 g_j and g_{j+1} for levels 1..3 (indices <= 900),
/// Xw: [1..40], Xiso: [1..8], Xs: [1..150].
VectorSampler default_sampler(const SpaceSpec& spec);

}  // namespace greedysum
