#pragma once

#include "greedysum/core.hpp"
#include "greedysum/real.hpp"
#include "greedysum/spaces.hpp"
#include "greedysum/tga.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace greedysum {

/// Competitor families for the residual comparison.
///   ag:   P_A for every A with |A| <= m
///   ag2:  intervals with |I| <= m
///   pg:   partial sums S_n, 0 <= n <= m
///   pg2:  intervals with |I| <= m and, if nonempty, L >= min I
///   rpg2: intervals with |I| <= m and, if nonempty, L <= max I
enum class Family { ag, ag2, pg, pg2, rpg2 };

std::string_view to_string(Family f);
/// Accepts "ag", "ag2", "pg", "pg2", "rpg2" (case-insensitive).
Family parse_family(std::string_view text);

enum class PairFlavor { democratic, max_conservative, democratic_t2 };

std::string_view to_string(PairFlavor f);
/// Accepts "democratic", "max-conservative", "democratic-t2" (underscores ok).
PairFlavor parse_pair_flavor(std::string_view text);

/// ||x - P_L(x)|| / ||x - P_C(x)|| for a greedy set L and competitor C.
struct ResidualWitness {
    SparseVector x;
    std::size_t m = 0;
    Family family = Family::ag2;
    IndexSet greedy;
    IndexSet competitor;  ///< support points removed by the competitor
    Interval interval;    ///< an interval realizing `competitor` (empty for ag / empty competitor)
};

/// ||1_A|| / ||1_B||.
struct PairWitness {
    IndexSet a;
    IndexSet b;
};

/// ||x + 1_{eps A}|| / ||x + 1_{delta B}||.
struct Slc2Witness {
    SparseVector x;
    IndexSet a;
    IndexSet b;
    SignPattern eps;
    SignPattern delta;
};

/// ||P_L(x)|| / ||x|| (quasi-greedy) or ||x - P_L(x)|| / ||x|| (suppression).
struct GreedyProjectionWitness {
    SparseVector x;
    IndexSet greedy;
    bool suppression = false;
};

/// ||T_a(x)|| / ||x||.
struct TruncationWitness {
    SparseVector x;
    Rational level;
};

/// UL-property instance: y = sum a_n e_n on A. The replayed ratio is
/// max(||y|| / upper, lower / ||y||), at most 1 iff both inequalities hold.
struct UlWitness {
    IndexSet a;
    SparseVector y;
    Rational c_qg;
};

using Witness = std::variant<std::monostate, ResidualWitness, PairWitness, Slc2Witness,
                             GreedyProjectionWitness, TruncationWitness, UlWitness>;

/// Outcome of a property check. worst_ratio is a certified lower bound on
/// the property's best constant (the witness is exact) and only a heuristic
/// upper bound: a report never claims a property holds globally.
struct PropertyReport {
    std::string property;
    Rational lambda{1};
    Real worst_ratio;
    Witness witness;
    bool exhaustive = true;
    std::size_t instances_checked = 0;
    std::optional<std::uint64_t> seed;
    /// Extra named quantities (e.g. the two UL slacks).
    std::vector<std::pair<std::string, Real>> details;
};

/// Recomputes a witness's ratio from scratch. monostate replays to 0.
Real replay(const SpaceSpec& spec, const Witness& witness);

/// Max-ratio reduction: keeps the larger ratio (and its witness), sums
/// instance counts and ANDs the exhaustive flags. Ties keep `into`.
void absorb(PropertyReport& into, const PropertyReport& other);

/// One-line human/CSV friendly witness description, "" for monostate.
std::string describe(const Witness& witness);

/// Pinned CSV columns: property,lambda,ratio,witness,exhaustive,seed.
std::string report_csv_header();
std::string report_csv_row(const PropertyReport& report, bool include_witness = true);
std::string report_json(const PropertyReport& report);

/// Canonical competitor sets: the empty set plus every distinct trace
/// I ∩ supp(x) allowed by the family (for ag: every subset of supp(x) of
/// size <= m). Paired with an interval realizing each trace.
std::vector<std::pair<IndexSet, Interval>> competitor_sets(const SparseVector& x, std::size_t m,
                                                           Family family, const IndexSet& greedy);

struct Infimum {
    Real value;
    IndexSet argmin;
    Interval interval;
};

/// inf over the family of ||x - P_C(x)||, exact over the canonical family.
Infimum competitor_infimum(const SpaceSpec& spec, const SparseVector& x, std::size_t m,
                           Family family, const IndexSet& greedy);

/// max over L in G(x, ceil(lambda m)) of ||x - P_L(x)|| / inf_C ||x - P_C(x)||.
/// Instances with ceil(lambda m) >= |supp(x)| report ratio 0. m = 0 is a
/// DomainError.
PropertyReport residual_ratio(const SpaceSpec& spec, const SparseVector& x, std::size_t m,
                              const Rational& lambda, Family family,
                              std::size_t cap = kDefaultGreedyCap);

/// Empty when (A, B) satisfies the flavor's side condition, else the name of
/// the failed condition:
///   democratic:       |A| <= |B|
///   max_conservative: A < B and (lambda - 1) max A + |A| <= |B|
///   democratic_t2:    (lambda - 1) s(A) + |A| <= |B| and B surrounds A
std::optional<std::string> pair_condition_failure(const IndexSet& a, const IndexSet& b,
                                                  const Rational& lambda, PairFlavor flavor);

/// ||1_A|| / ||1_B||. ConstraintViolation when the side condition fails.
PropertyReport set_pair_ratio(const SpaceSpec& spec, const IndexSet& a, const IndexSet& b,
                              const Rational& lambda, PairFlavor flavor);

/// Exhaustive sup of set_pair_ratio over all admissible A, B within
/// [1..radius] (radius <= 20). Nonempty A only.
PropertyReport set_pair_sweep(const SpaceSpec& spec, const Rational& lambda, PairFlavor flavor,
                              std::size_t radius);

/// ||x + 1_{eps A}|| / ||x + 1_{delta B}||. Checks ||x||_inf <= 1,
/// (lambda - 1) s(A) + |A| <= |B|, B ∩ supp(x) = ∅, and that both B and
/// supp(x) surround A; each failure raises ConstraintViolation by name.
PropertyReport slc2_instance(const SpaceSpec& spec, const SparseVector& x, const IndexSet& a,
                             const IndexSet& b, const SignPattern& eps, const SignPattern& delta,
                             const Rational& lambda);

struct QgReport {
    PropertyReport quasi_greedy;  ///< max ||P_L(x)|| / ||x||
    PropertyReport suppression;   ///< max ||x - P_L(x)|| / ||x||
};

/// Sweeps every x in the corpus, every 0 <= m <= |supp(x)| and every greedy
/// set. Zero vectors are skipped. An empty corpus is a DomainError.
QgReport qg_constants(const SpaceSpec& spec, std::span<const SparseVector> corpus,
                      std::size_t cap = kDefaultGreedyCap);

/// max ||T_a(x)|| / ||x|| over corpus x a_grid (zero vectors skipped).
PropertyReport truncation_check(const SpaceSpec& spec, std::span<const SparseVector> corpus,
                                std::span<const Rational> a_grid);

/// (1/(2C)) min|a_n| ||1_A|| <= ||sum a_n e_n|| <= 2C max|a_n| ||1_A||.
/// details: "lower_slack" = middle / lower, "upper_slack" = middle / upper.
/// Empty A is a DomainError; coeffs must have |A| entries (ConstraintViolation).
PropertyReport ul_check(const SpaceSpec& spec, const IndexSet& a, std::span<const Rational> coeffs,
                        const Rational& c_qg);

/// The open interval (max{1/(l-1), l/(l+1)}, 1) of admissible s for the
/// isometric counterexample, or nullopt when it is empty (every l <= 2).
std::optional<std::pair<Rational, Rational>> iso_witness_interval(const Rational& lambda);

}  // namespace greedysum
