#include "greedysum/experiments.hpp"

#include "greedysum/errors.hpp"
#include "greedysum/parallel.hpp"
#include "greedysum/sampling.hpp"
#include "greedysum/tga.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace greedysum {

// -------------------------------------------------------------- results

bool ExperimentResult::pass() const { return violation_count() == 0; }

std::size_t ExperimentResult::violation_count() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const auto& row) { return !row.empty() && !row.back().empty(); }));
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fixed(double v, int digits = 9) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string decimal(const Real& r) { return r.is_infinite() ? "inf" : fixed(r.to_double(), 6); }

std::string num(std::size_t n) { return std::to_string(n); }

}  // namespace

std::string ExperimentResult::to_csv() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << csv_field(columns[k]);
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_field(row[k]);
        os << '\n';
    }
    return os.str();
}

std::string ExperimentResult::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["seed"] = seed;
    j["verdict"] = pass() ? "pass" : "fail";
    j["rows"] = rows.size();
    auto& s = j["summary"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary) s[k] = v;
    auto& violations = j["violations"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        if (row.empty() || row.back().empty()) continue;
        nlohmann::ordered_json entry;
        for (std::size_t k = 0; k < row.size() && k < columns.size(); ++k) entry[columns[k]] = row[k];
        violations.push_back(std::move(entry));
    }
    return j.dump(2);
}

// ---------------------------------------------------------- pg separation

std::pair<IndexSet, IndexSet> pg_witness_sets(const XpgParams& params, std::size_t j, const Rational& lambda) {
    if (j < 2) throw DomainError("witness level must be at least 2");
    if (lambda < 1) throw DomainError("lambda must be at least 1");
    if (params.g.size() < j + 1)
        throw InsufficientLevels("level " + std::to_string(j + 1) + " needed, have " + std::to_string(params.g.size()));
    const Index gj = params.level(j);
    const Index start = floor_u64(params.a1 * gj);
    const Index width = floor_u64(params.a3 * gj);
    if (width == 0) throw ConstraintViolation("floor(a3 g_j) = 0 leaves A empty");
    const Index next = params.level(j + 1);
    const Index extra = floor_u64((lambda - 1) * Rational(start + width));
    return {IndexSet::range(start + 1, start + width), IndexSet::range(next, next + width + extra)};
}

Rational max_conservative_bound(const XpgParams& params) {
    const Rational gap = params.lambda2 - 1 - params.a2 - params.a4;
    Rational bound = std::max<Rational>(1, 2 / params.a4 - 2);
    if (params.g.size() >= 2) bound = std::max<Rational>(bound, Rational(params.level(2) - 1));
    bound = std::max<Rational>(bound, 2 / params.a4);
    bound = std::max<Rational>(bound, Rational(1 / std::min<Rational>(1, gap)));
    return bound;
}

ExperimentResult run_pg_separation(const XpgParams& params, std::size_t j_lo, std::size_t j_hi,
                                   std::size_t sweep_radius) {
    params.validate();
    if (j_lo < 2 || j_hi < j_lo) throw DomainError("level range must satisfy 2 <= j_lo <= j_hi");
    if (params.g.size() < j_hi + 1)
        throw InsufficientLevels("levels up to " + std::to_string(j_hi + 1) + " needed, have " +
                                 std::to_string(params.g.size()));
    const SpaceSpec spec = SpaceSpec::xpg(params);
    const Rational bound = max_conservative_bound(params);

    ExperimentResult out;
    out.name = "pg-separation";
    out.columns = {"j", "lambda", "A", "B", "norm_A", "norm_B", "ratio", "ratio_approx", "floor_a3_gj",
                   "g_j_minus_1", "violation"};

    std::optional<Real> previous;
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
        for (const Rational& lambda : {params.lambda1, params.lambda2}) {
            const bool divergent = lambda == params.lambda1;
            const auto [a, b] = pg_witness_sets(params, j, lambda);
            const Real na = norm(SparseVector::indicator(a), spec);
            const Real nb = norm(SparseVector::indicator(b), spec);
            const Real r = ratio(na, nb);
            const Index floor_a3 = floor_u64(params.a3 * params.level(j));
            const Index g_prev = params.level(j - 1);
            std::string violation;
            if (auto failure = pair_condition_failure(a, b, lambda, PairFlavor::max_conservative))
                violation = "side condition fails: " + *failure;
            else if (divergent) {
                if (na < Real(Rational(floor_a3))) violation = "norm_A below floor(a3 g_j)";
                else if (nb > Real(Rational(g_prev))) violation = "norm_B above g_{j-1}";
                else if (previous && !(r > *previous)) violation = "ratio not increasing";
                previous = r;
            } else if (r > Real(bound)) {
                violation = "ratio above " + to_string(bound);
            }
            out.rows.push_back({num(j), to_string(lambda), to_string(a), to_string(b), to_string(na), to_string(nb),
                                to_string(r), decimal(r), num(floor_a3), num(g_prev), violation});
        }
    }

    if (sweep_radius > 0) {
        const PropertyReport sweep =
            set_pair_sweep(spec, params.lambda2, PairFlavor::max_conservative, sweep_radius);
        const std::string violation =
            sweep.worst_ratio > Real(bound) ? "sweep ratio above " + to_string(bound) : std::string();
        out.rows.push_back({"sweep[1.." + num(sweep_radius) + "]", to_string(params.lambda2),
                            to_string(std::get<PairWitness>(sweep.witness).a),
                            to_string(std::get<PairWitness>(sweep.witness).b), "", "", to_string(sweep.worst_ratio),
                            decimal(sweep.worst_ratio), "", "", violation});
        out.summary.emplace_back("sweep_max_ratio", to_string(sweep.worst_ratio));
        out.summary.emplace_back("sweep_pairs", num(sweep.instances_checked));
    }
    out.summary.emplace_back("max_conservative_bound", to_string(bound));
    return out;
}

// --------------------------------------------------------- xw divergence

namespace {

IndexSet dyadic_indices(std::size_t n) {
    std::vector<Index> v;
    for (std::size_t k = 1; k <= n; ++k) v.push_back(Index{1} << k);
    return IndexSet(std::move(v));
}

IndexSet off_dyadic_indices(std::size_t n) {
    std::vector<Index> v;
    for (Index i = 3; v.size() < n; ++i)
        if (!in_dyadic_set(i)) v.push_back(i);
    return IndexSet(std::move(v));
}

inline constexpr std::size_t kLiteralXwLimit = 12;

}  // namespace

ExperimentResult run_xw_divergence(std::span<const std::size_t> ns) {
    ExperimentResult out;
    out.name = "xw-divergence";
    out.columns = {"N", "norm_A", "norm_B", "ratio", "literal_norm_A", "literal_norm_B", "violation"};
    std::optional<double> previous;
    for (std::size_t n : ns) {
        if (n == 0) throw DomainError("N must be positive");
        const double na = xw_indicator_norm(n, 0);
        const double nb = xw_indicator_norm(0, n);
        const double r = na / nb;
        std::string literal_a;
        std::string literal_b;
        std::string violation;
        if (n <= kLiteralXwLimit) {
            const double la = norm_xw(SparseVector::indicator(dyadic_indices(n)));
            const double lb = norm_xw(SparseVector::indicator(off_dyadic_indices(n)));
            literal_a = fixed(la, 12);
            literal_b = fixed(lb, 12);
            if (relative_difference(Real::approx(la), Real::approx(na)) > 1e-12 ||
                relative_difference(Real::approx(lb), Real::approx(nb)) > 1e-12)
                violation = "literal evaluation disagrees with rank formula";
        }
        if (violation.empty() && previous && !(r > *previous * (1 + kFloatTolerance)))
            violation = "ratio not increasing";
        previous = r;
        out.rows.push_back({num(n), fixed(na, 12), fixed(nb, 12), fixed(r, 12), literal_a, literal_b, violation});
    }
    return out;
}

// --------------------------------------------------------- iso threshold

namespace {

// m with ceil(lambda m) < |supp| when one exists, so the instance is not trivial.
std::size_t sample_order(std::mt19937_64& rng, const Rational& lambda, std::size_t support) {
    std::size_t top = 1;
    while (lambda_order(lambda, top + 1) < support) ++top;
    return std::uniform_int_distribution<std::size_t>(1, top)(rng);
}

inline constexpr std::size_t kExperimentGreedyCap = 4096;

PropertyReport sampled_residual_max(const SpaceSpec& spec, const VectorSampler& sampler, const Rational& lambda,
                                    Family family, std::size_t trials, std::uint64_t seed) {
    auto reports = parallel_map(trials, [&](std::size_t i) {
        auto rng = instance_rng(seed, i);
        const SparseVector x = sample_vector(rng, sampler);
        const std::size_t m = sample_order(rng, lambda, x.support_size());
        return residual_ratio(spec, x, m, lambda, family, kExperimentGreedyCap);
    });
    PropertyReport total;
    total.property = "residual-" + std::string(to_string(family));
    total.lambda = lambda;
    total.exhaustive = false;
    total.seed = seed;
    for (const auto& r : reports) {
        PropertyReport sampled = r;
        sampled.exhaustive = false;
        if (total.instances_checked == 0) {
            total.worst_ratio = sampled.worst_ratio;
            total.witness = sampled.witness;
            total.instances_checked = sampled.instances_checked;
        } else {
            absorb(total, sampled);
        }
    }
    return total;
}

}  // namespace

ExperimentResult run_iso_threshold(std::span<const Rational> lambdas, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw DomainError("trials must be at least 1");
    ExperimentResult out;
    out.name = "iso-threshold";
    out.seed = seed;
    out.columns = {"lambda", "interval", "s", "norm_x", "norm_residual", "suppression_bound", "trials",
                   "max_ag2_ratio", "ag2_witness", "violation"};
    for (const Rational& lambda : lambdas) {
        if (lambda < 1) throw DomainError("lambda must be at least 1");
        const auto interval = iso_witness_interval(lambda);
        if (lambda <= 2 || !interval) {
            const std::string violation = interval ? "witness interval should be empty" : "";
            out.rows.push_back({to_string(lambda), interval ? "(" + to_string(interval->first) + ",1)" : "empty", "",
                                "", "", "", "0", "", "", violation});
            continue;
        }
        const SpaceSpec spec = SpaceSpec::xiso(lambda);
        const Rational s = simplest_between(interval->first, interval->second);
        const SparseVector x{{1, Rational(-s)}, {2, Rational(1)}};
        const SparseVector rest{{1, Rational(-s)}};
        const Rational nx = norm_xiso(x, lambda);
        const Rational nr = norm_xiso(rest, lambda);
        // x has the single greedy set {2} of order 1, leaving `rest`.
        const Rational bound = nr / nx;

        VectorSampler sampler = default_sampler(spec);
        sampler.min_support = 2;
        sampler.max_support = sampler.window.size();
        const PropertyReport ag2 = sampled_residual_max(spec, sampler, lambda, Family::ag2, trials, seed);

        std::string violation;
        if (!(nx < nr)) violation = "witness pair does not lose norm";
        else if (ag2.worst_ratio > Real(1L)) violation = "ag2 ratio above 1: " + describe(ag2.witness);
        out.rows.push_back({to_string(lambda), "(" + to_string(interval->first) + ",1)", to_string(s), to_string(nx),
                            to_string(nr), to_string(bound), num(trials), to_string(ag2.worst_ratio),
                            describe(ag2.witness), violation});
    }
    return out;
}

// ----------------------------------------------------------- xs hierarchy

ExperimentResult run_xs_hierarchy(std::span<const std::size_t> ns, std::size_t trials, std::uint64_t seed) {
    const SpaceSpec spec = SpaceSpec::xs();
    const Rational lambda(2);
    ExperimentResult out;
    out.name = "xs-hierarchy";
    out.seed = seed;
    out.columns = {"N", "A", "B", "norm_A", "norm_B", "ratio", "ratio_approx", "skipped", "violation"};
    std::optional<Rational> previous;
    for (std::size_t n : ns) {
        if (n == 0) throw DomainError("N must be positive");
        const IndexSet a = IndexSet::range(Index{n} * n, Index{n} * n + n - 1);
        const IndexSet b = IndexSet::range(1, 2 * Index{n});
        if (auto failure = pair_condition_failure(a, b, lambda, PairFlavor::democratic_t2)) {
            out.rows.push_back({num(n), to_string(a), to_string(b), "", "", "", "", "fails: " + *failure, ""});
            continue;
        }
        const Rational na = norm_xs(SparseVector::indicator(a));
        const Rational nb = norm_xs(SparseVector::indicator(b));
        const Rational r = nb / na;
        std::string violation;
        if (previous && !(r < *previous)) violation = "ratio not decreasing";
        previous = r;
        out.rows.push_back({num(n), to_string(a), to_string(b), to_string(na), to_string(nb), to_string(r),
                            fixed(to_double(r), 6), "", violation});
    }
    if (trials > 0) {
        VectorSampler sampler = default_sampler(spec);
        sampler.min_support = 2;
        const PropertyReport pg2 = sampled_residual_max(spec, sampler, lambda, Family::pg2, trials, seed);
        out.summary.emplace_back("pg2_trials", num(trials));
        out.summary.emplace_back("pg2_max_ratio", to_string(pg2.worst_ratio));
        out.summary.emplace_back("pg2_witness", describe(pg2.witness));
    }
    return out;
}

// ------------------------------------------------------ hierarchy ordering

namespace {

const std::array<Rational, 4>& ordering_lambdas() {
    static const std::array<Rational, 4> values{Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    return values;
}

struct OrderingOutcome {
    std::size_t lambda_slot = 0;
    bool nontrivial = false;
    std::size_t greedy_sets = 0;
    std::array<Real, 4> worst{};  // ag, ag2, pg2, rpg2
    std::string violation;
};

}  // namespace

ExperimentResult run_hierarchy_ordering(const SpaceSpec& spec, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw DomainError("trials must be at least 1");
    VectorSampler sampler = default_sampler(spec);
    sampler.min_support = 2;
    const auto outcomes = parallel_map(trials, [&](std::size_t i) {
        auto rng = instance_rng(seed, i);
        OrderingOutcome o;
        o.lambda_slot = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        const Rational& lambda = ordering_lambdas()[o.lambda_slot];
        const SparseVector x = sample_vector(rng, sampler);
        const std::size_t m = sample_order(rng, lambda, x.support_size());
        const std::size_t order = lambda_order(lambda, m);
        if (order >= x.support_size()) return o;
        o.nontrivial = true;
        const Infimum ag = competitor_infimum(spec, x, m, Family::ag, {});
        const Infimum ag2 = competitor_infimum(spec, x, m, Family::ag2, {});
        for (const IndexSet& lam : greedy_sets(x, order, kExperimentGreedyCap).sets) {
            ++o.greedy_sets;
            const Infimum pg2 = competitor_infimum(spec, x, m, Family::pg2, lam);
            const Infimum rpg2 = competitor_infimum(spec, x, m, Family::rpg2, lam);
            const Real top = norm(residual(x, lam), spec);
            const std::array<Real, 4> ratios{ratio(top, ag.value), ratio(top, ag2.value), ratio(top, pg2.value),
                                             ratio(top, rpg2.value)};
            for (std::size_t k = 0; k < 4; ++k) o.worst[k] = max(o.worst[k], ratios[k]);
            if (o.violation.empty() && (ag.value > ag2.value || ag2.value > pg2.value || ag2.value > rpg2.value))
                o.violation = "x=" + to_string(x) + ";m=" + num(m) + ";greedy=" + to_string(lam) + ";inf=" +
                              to_string(ag.value) + "/" + to_string(ag2.value) + "/" + to_string(pg2.value) + "/" +
                              to_string(rpg2.value);
        }
        return o;
    });

    ExperimentResult out;
    out.name = "hierarchy-ordering";
    out.seed = seed;
    out.columns = {"space",          "lambda",         "instances",       "nontrivial",     "greedy_sets",
                   "max_ratio_ag",   "max_ratio_ag2",  "max_ratio_pg2",   "max_ratio_rpg2", "violations",
                   "violation"};
    for (std::size_t slot = 0; slot < 4; ++slot) {
        std::size_t instances = 0;
        std::size_t nontrivial = 0;
        std::size_t sets = 0;
        std::size_t bad = 0;
        std::array<Real, 4> worst{};
        std::string first;
        for (const auto& o : outcomes) {
            if (o.lambda_slot != slot) continue;
            ++instances;
            nontrivial += o.nontrivial ? 1 : 0;
            sets += o.greedy_sets;
            for (std::size_t k = 0; k < 4; ++k) worst[k] = max(worst[k], o.worst[k]);
            if (!o.violation.empty()) {
                ++bad;
                if (first.empty()) first = o.violation;
            }
        }
        out.rows.push_back({spec.name(), to_string(ordering_lambdas()[slot]), num(instances), num(nontrivial),
                            num(sets), decimal(worst[0]), decimal(worst[1]), decimal(worst[2]), decimal(worst[3]),
                            num(bad), first});
    }
    return out;
}

// ------------------------------------------------------------ oracle fuzz

namespace {

struct FuzzOutcome {
    double difference = 0;
    std::string mismatch;
};

}  // namespace

ExperimentResult run_oracle_fuzz(std::span<const SpaceSpec> specs, std::size_t trials, std::uint64_t seed) {
    ExperimentResult out;
    out.name = "oracle-fuzz";
    out.seed = seed;
    out.columns = {"space", "vectors", "mismatches", "max_relative_difference", "violation"};
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const SpaceSpec& spec = specs[s];
        const VectorSampler sampler = default_sampler(spec);
        // Instance 0 is the zero vector.
        const auto outcomes = parallel_map(trials + 1, [&](std::size_t i) {
            SparseVector x;
            if (i > 0) {
                auto rng = instance_rng(seed, (std::uint64_t{s} << 32) | i);
                x = sample_vector(rng, sampler);
            }
            const Real fast = norm(x, spec);
            const Real slow = norm_oracle(x, spec);
            FuzzOutcome o;
            o.difference = relative_difference(fast, slow);
            const bool ok = spec.exact() ? fast == slow : o.difference <= 1e-12;
            if (!ok) o.mismatch = "x=" + to_string(x) + ";norm=" + to_string(fast) + ";oracle=" + to_string(slow);
            return o;
        });
        std::size_t bad = 0;
        double worst = 0;
        std::string first;
        for (const auto& o : outcomes) {
            worst = std::max(worst, o.difference);
            if (!o.mismatch.empty()) {
                ++bad;
                if (first.empty()) first = o.mismatch;
            }
        }
        std::ostringstream diff;
        diff << std::setprecision(3) << worst;
        out.rows.push_back({spec.name(), num(trials + 1), num(bad), diff.str(), first});
    }
    return out;
}

}  // namespace greedysum
