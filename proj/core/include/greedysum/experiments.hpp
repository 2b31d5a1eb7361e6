#pragma once

#include "greedysum/core.hpp"
#include "greedysum/props.hpp"
#include "greedysum/spaces.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace greedysum {

/// A table of parameter points plus a verdict. The last column of every
/// experiment is "violation": empty for rows meeting the experiment's
/// predicate, a description otherwise. Rows are reproducible from
/// (name, parameters, seed).
struct ExperimentResult {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    /// Run-level quantities (e.g. the exhaustive sweep maximum).
    std::vector<std::pair<std::string, std::string>> summary;

    bool pass() const;
    std::size_t violation_count() const;
    std::string to_csv() const;
    /// {"name","seed","verdict","summary":{...},"violations":[...]}.
    std::string to_json() const;
};

/// The two sets used to break lambda-max conservativeness at level j:
/// A = {floor(a1 g_j) + 1, ..., floor(a1 g_j) + floor(a3 g_j)} and
/// B = {g_{j+1}, ..., g_{j+1} + floor(a3 g_j) + floor((l - 1)(floor(a1 g_j) + floor(a3 g_j)))}.
/// With l = lambda1 this is the divergent family; with l = lambda2 it is the
/// same A against a B large enough for the lambda2 condition.
std::pair<IndexSet, IndexSet> pg_witness_sets(const XpgParams& params, std::size_t j,
                                              const Rational& lambda);

/// max{1, 2/a4 - 2, g_2 - 1, 2/a4, 1 / min(1, l2 - 1 - a2 - a4)}: the
/// lambda2-max-conservative constant assembled from the construction.
Rational max_conservative_bound(const XpgParams& params);

/// Per level j in [j_lo, j_hi] (j_lo >= 2): the witness pair at lambda1,
/// its norms, ratio and the two displayed bounds ||1_A|| >= floor(a3 g_j),
/// ||1_B|| <= g_{j-1}; ratio must strictly increase. Also the lambda2 pair
/// and an exhaustive lambda2-max-conservative sweep over [1..sweep_radius]
/// that must stay below max_conservative_bound.
ExperimentResult run_pg_separation(const XpgParams& params, std::size_t j_lo, std::size_t j_hi,
                                   std::size_t sweep_radius = 14);

/// ||1_{A_N}|| (N dyadic indices) vs ||1_{B_N}|| (the first N non-dyadic
/// indices from 3 on). Ratios must strictly increase (by more than 1e-9
/// relative). A_N is evaluated literally for N <= 12 and by weight rank
/// beyond; both are reported where available.
ExperimentResult run_xw_divergence(std::span<const std::size_t> ns);

/// For each lambda: when the witness interval is nonempty, s = the simplest
/// rational inside it, ||(-s,1)|| < ||(-s,0)|| exactly, the suppression
/// lower bound from that pair, and `trials` random AG2 instances with ratio
/// <= 1. When lambda <= 2 the interval must be empty.
ExperimentResult run_iso_threshold(std::span<const Rational> lambdas, std::size_t trials,
                                   std::uint64_t seed);

/// A_N = {N^2, ..., N^2 + N - 1} vs B_N = {1..2N} in Xs at lambda = 2.
/// Points failing the type-2 side conditions are skipped with a reason;
/// ||1_B|| / ||1_A|| must strictly decrease across the rest. Runs `trials`
/// random PG2 instances (lambda = 2) and reports their largest ratio.
ExperimentResult run_xs_hierarchy(std::span<const std::size_t> ns, std::size_t trials,
                                  std::uint64_t seed);

/// Random (x, m, lambda in {1, 3/2, 2, 3}); for every greedy set checks
/// inf_ag <= inf_ag2 <= inf_pg2 and inf_ag2 <= inf_rpg2 (hence the reverse
/// ordering of ratios). One row per lambda.
ExperimentResult run_hierarchy_ordering(const SpaceSpec& spec, std::size_t trials,
                                        std::uint64_t seed);

/// Structured evaluator vs norm_oracle on `trials` random vectors per space
/// (plus the zero vector): exact equality on the exact path, 1e-12 relative
/// on Xw. One row per space.
ExperimentResult run_oracle_fuzz(std::span<const SpaceSpec> specs, std::size_t trials,
                                 std::uint64_t seed);

}  // namespace greedysum
