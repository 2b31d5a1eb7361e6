#pragma once

#include "greedysum/core.hpp"
#include "greedysum/real.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace greedysum {

/// Parameters of the two-factor partially greedy space X_{l1,l2}.
///
/// Invariants (checked by validate()):
///   a1 > 1, 0 < a3 < 1, 0 < a4 < 1,
///   a3 + (l1 - 1)(a1 + a3) < a2 < l2 - 1 - a4,
///   p > max{a2/(a1 - 1), (a2 + 1)/a4, a1 + a3},
///   g1 = 1 and g_{n+1} > (p + n) g_n.
struct XpgParams {
    Rational lambda1;
    Rational lambda2;
    Rational a1;
    Rational a2;
    Rational a3;
    Rational a4;
    Rational p;
    std::vector<Index> g;

    /// Throws DomainError (l1 >= l2 or l1 < 1) or ConstraintViolation naming
    /// the first inequality that fails.
    void validate() const;

    /// g_j, 1-based.
    Index level(std::size_t j) const;

    friend bool operator==(const XpgParams&, const XpgParams&) = default;
};

/// Caller-supplied values for make_xpg_params; anything unset is chosen by
/// the default strategy.
struct XpgOverrides {
    std::optional<Rational> a1;
    std::optional<Rational> a2;
    std::optional<Rational> a3;
    std::optional<Rational> a4;
    std::optional<Rational> p;
    std::optional<std::vector<Index>> g;
};

/// Builds a validated parameter tuple. Default strategy with gap = l2 - l1:
/// a1 = 1 + t where t = 1 if l1 = 1 else min(1, gap / (4(l1 - 1))),
/// a3 = min(1/2, gap / (4 l1)), a4 = min(1/2, gap / 4), a2 the midpoint of
/// its feasible window, p the least integer above its bound and g from
/// gen_g_sequence. For (1, 2) this is the preset (2, 1/2, 1/4, 1/4), p = 7.
XpgParams make_xpg_params(const Rational& lambda1, const Rational& lambda2,
                          std::size_t levels, const XpgOverrides& overrides = {});

/// g1 = 1, g_{n+1} = floor((p + n) g_n) + 1. levels = 0 is a DomainError.
std::vector<Index> gen_g_sequence(const Rational& p, std::size_t levels);

/// (l1, l2) = (1, 2), a = (2, 1/2, 1/4, 1/4), p = 7, g = (1, 9, 82, 821, 9032).
XpgParams xpg_preset(std::size_t levels = 5);

struct XpgSpace {
    XpgParams params;
    friend bool operator==(const XpgSpace&, const XpgSpace&) = default;
};
struct XwSpace {
    friend bool operator==(const XwSpace&, const XwSpace&) = default;
};
struct XisoSpace {
    Rational lambda;
    friend bool operator==(const XisoSpace&, const XisoSpace&) = default;
};
struct XsSpace {
    friend bool operator==(const XsSpace&, const XsSpace&) = default;
};

/// Which constructed norm is in force. The single dispatch point for norm().
class SpaceSpec {
public:
    using Kind = std::variant<XpgSpace, XwSpace, XisoSpace, XsSpace>;

    static SpaceSpec xpg(XpgParams params);
    static SpaceSpec xw();
    /// lambda >= 1, otherwise DomainError.
    static SpaceSpec xiso(Rational lambda);
    static SpaceSpec xs();

    const Kind& kind() const { return kind_; }
    /// "xpg", "xw", "xiso" or "xs".
    std::string name() const;
    /// False only for Xw, whose weights involve square roots.
    bool exact() const;
    /// Xpg, Xw and Xs have a 1-unconditional unit vector basis.
    bool one_unconditional() const;

    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

private:
    explicit SpaceSpec(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

/// Ordered key=value pairs describing a space (config section body).
using ConfigSection = std::vector<std::pair<std::string, std::string>>;

/// kind=..., then the kind's parameters with exact "num/den" values and the
/// g list as comma-separated integers.
ConfigSection to_config_section(const SpaceSpec& spec);
/// Inverse of to_config_section. For kind=xpg, missing a*/p/g keys are filled
/// by make_xpg_params using `levels` (default 5); present ones are validated.
SpaceSpec space_from_config(const std::map<std::string, std::string>& section);

/// max_i |x_i| v sup_j (sum of the g_j - 1 largest |x_i| over admissible
/// i: i > a1 g_j and i outside [g_{j+1}, floor(g_{j+1} + a2 g_j)]).
/// Throws InsufficientLevels when a level with a1 g_j < max supp(x) has no
/// g_{j+1}.
Rational norm_xpg(const SparseVector& x, const XpgParams& params);

/// Sorted matching of u_k = 1/sqrt(k) against the moduli on D = {2, 4, 8, ...}
/// and v_k = 1/k against the rest.
double norm_xw(const SparseVector& x);

/// |x1/l + x2| v |x1 + x2/l| v (1/l) sum |x_i|.
Rational norm_xiso(const SparseVector& x, const Rational& lambda);

/// max over k >= 1 of the sum of the k largest |x_i| with i >= k^2.
Rational norm_xs(const SparseVector& x);

/// Dispatches on the space; exact Real except for Xw.
Real norm(const SparseVector& x, const SpaceSpec& spec);

/// ||1_A|| for Xw through weight ranks only: sum_{k <= in_d} 1/sqrt(k) +
/// sum_{k <= off_d} 1/k. Valid for any A with in_d points in D and off_d
/// outside, which lets huge dyadic indices be skipped.
double xw_indicator_norm(std::size_t in_d, std::size_t off_d);

/// True for n in D = {2^k : k >= 1}.
bool in_dyadic_set(Index n);

/// Oracle budget: at most this many support points and this largest index.
inline constexpr std::size_t kOracleMaxSupport = 12;
inline constexpr Index kOracleMaxIndex = 10000;

/// Brute-force evaluation used to validate the structured evaluators.
/// Xpg and Xs enumerate every subset of supp(x) that can sit inside an
/// admissible F; Xw maximizes over all injective weight assignments; Xiso is
/// evaluated term by term on the dense prefix. Throws BudgetExceeded outside
/// the budget.
Real norm_oracle(const SparseVector& x, const SpaceSpec& spec);

}  // namespace greedysum
