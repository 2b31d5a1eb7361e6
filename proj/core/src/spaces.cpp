#include "greedysum/spaces.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

namespace greedysum {

// ------------------------------------------------------------- parameters

namespace {

void require(bool ok, const std::string& inequality) {
    if (!ok) throw ConstraintViolation("violated: " + inequality);
}

Rational a2_lower(const Rational& lambda1, const Rational& a1, const Rational& a3) {
    return Rational(a3 + (lambda1 - 1) * (a1 + a3));
}

Rational a2_upper(const Rational& lambda2, const Rational& a4) { return Rational(lambda2 - 1 - a4); }

Rational p_bound(const Rational& a1, const Rational& a2, const Rational& a3, const Rational& a4) {
    Rational b1 = a2 / (a1 - 1);
    Rational b2 = (a2 + 1) / a4;
    Rational b3 = a1 + a3;
    return std::max({b1, b2, b3});
}

void check_lambdas(const Rational& lambda1, const Rational& lambda2) {
    if (lambda1 < 1) throw DomainError("lambda1 must be at least 1");
    if (!(lambda1 < lambda2)) throw DomainError("lambda1 < lambda2 required");
}

std::string join(const std::vector<Index>& v) {
    std::ostringstream os;
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    return os.str();
}

}  // namespace

void XpgParams::validate() const {
    check_lambdas(lambda1, lambda2);
    require(a1 > 1, "a1 > 1");
    require(a3 > 0 && a3 < 1, "0 < a3 < 1");
    require(a4 > 0 && a4 < 1, "0 < a4 < 1");
    require(a2_lower(lambda1, a1, a3) < a2, "a3 + (lambda1 - 1)(a1 + a3) < a2");
    require(a2 < a2_upper(lambda2, a4), "a2 < lambda2 - 1 - a4");
    require(p > Rational(a2 / (a1 - 1)), "p > a2 / (a1 - 1)");
    require(p > Rational((a2 + 1) / a4), "p > (a2 + 1) / a4");
    require(p > Rational(a1 + a3), "p > a1 + a3");
    require(!g.empty(), "g has at least one level");
    require(g.front() == 1, "g_1 = 1");
    for (std::size_t n = 1; n < g.size(); ++n) {
        // g_{n+1} > (p + n) g_n with 1-based n.
        require(Rational(g[n]) > Rational((p + n) * g[n - 1]),
                "g_{n+1} > (p + n) g_n at n = " + std::to_string(n));
    }
}

Index XpgParams::level(std::size_t j) const {
    if (j == 0 || j > g.size())
        throw InsufficientLevels("level " + std::to_string(j) + " not available; extend g sequence (have " +
                                 std::to_string(g.size()) + " levels)");
    return g[j - 1];
}

std::vector<Index> gen_g_sequence(const Rational& p, std::size_t levels) {
    if (levels == 0) throw DomainError("gen_g_sequence needs at least one level");
    std::vector<Index> g{1};
    for (std::size_t n = 1; n < levels; ++n) {
        Rational next = (p + n) * g.back();
        g.push_back(floor_u64(next) + 1);
    }
    return g;
}

XpgParams make_xpg_params(const Rational& lambda1, const Rational& lambda2, std::size_t levels,
                          const XpgOverrides& overrides) {
    check_lambdas(lambda1, lambda2);
    if (levels == 0 && !overrides.g) throw DomainError("at least one level required");
    const Rational gap = lambda2 - lambda1;
    const Rational quarter = gap / 4;

    XpgParams out;
    out.lambda1 = lambda1;
    out.lambda2 = lambda2;
    if (overrides.a1) {
        out.a1 = *overrides.a1;
    } else {
        Rational t = lambda1 == 1 ? Rational(1) : std::min(Rational(1), Rational(quarter / (lambda1 - 1)));
        out.a1 = 1 + t;
    }
    out.a3 = overrides.a3 ? *overrides.a3 : std::min(Rational(1, 2), Rational(quarter / lambda1));
    out.a4 = overrides.a4 ? *overrides.a4 : std::min(Rational(1, 2), quarter);
    out.a2 = overrides.a2 ? *overrides.a2
                          : Rational((a2_lower(lambda1, out.a1, out.a3) + a2_upper(lambda2, out.a4)) / 2);
    if (overrides.p) {
        out.p = *overrides.p;
    } else {
        // Least integer strictly above the bound; the bound is only meaningful
        // once a1 > 1 and a4 > 0, which validate() reports otherwise.
        if (out.a1 > 1 && out.a4 > 0)
            out.p = Rational(floor_of(p_bound(out.a1, out.a2, out.a3, out.a4)) + 1);
        else
            out.p = 0;
    }
    out.g = overrides.g ? *overrides.g : std::vector<Index>{1};
    if (!overrides.g && out.p > 0) out.g = gen_g_sequence(out.p, levels);
    out.validate();
    return out;
}

XpgParams xpg_preset(std::size_t levels) {
    XpgOverrides o;
    o.a1 = Rational(2);
    o.a2 = Rational(1, 2);
    o.a3 = Rational(1, 4);
    o.a4 = Rational(1, 4);
    o.p = Rational(7);
    return make_xpg_params(Rational(1), Rational(2), levels, o);
}

// --------------------------------------------------------------- SpaceSpec

SpaceSpec SpaceSpec::xpg(XpgParams params) {
    params.validate();
    return SpaceSpec(XpgSpace{std::move(params)});
}

SpaceSpec SpaceSpec::xw() { return SpaceSpec(XwSpace{}); }

SpaceSpec SpaceSpec::xiso(Rational lambda) {
    if (lambda < 1) throw DomainError("Xiso needs lambda >= 1");
    return SpaceSpec(XisoSpace{std::move(lambda)});
}

SpaceSpec SpaceSpec::xs() { return SpaceSpec(XsSpace{}); }

std::string SpaceSpec::name() const {
    struct V {
        std::string operator()(const XpgSpace&) const { return "xpg"; }
        std::string operator()(const XwSpace&) const { return "xw"; }
        std::string operator()(const XisoSpace&) const { return "xiso"; }
        std::string operator()(const XsSpace&) const { return "xs"; }
    };
    return std::visit(V{}, kind_);
}

bool SpaceSpec::exact() const { return !std::holds_alternative<XwSpace>(kind_); }

bool SpaceSpec::one_unconditional() const { return !std::holds_alternative<XisoSpace>(kind_); }

ConfigSection to_config_section(const SpaceSpec& spec) {
    ConfigSection out{{"kind", spec.name()}};
    if (auto* s = std::get_if<XpgSpace>(&spec.kind())) {
        const auto& p = s->params;
        out.emplace_back("lambda1", to_string(p.lambda1));
        out.emplace_back("lambda2", to_string(p.lambda2));
        out.emplace_back("a1", to_string(p.a1));
        out.emplace_back("a2", to_string(p.a2));
        out.emplace_back("a3", to_string(p.a3));
        out.emplace_back("a4", to_string(p.a4));
        out.emplace_back("p", to_string(p.p));
        out.emplace_back("g", join(p.g));
    } else if (auto* s = std::get_if<XisoSpace>(&spec.kind())) {
        out.emplace_back("lambda", to_string(s->lambda));
    }
    return out;
}

SpaceSpec space_from_config(const std::map<std::string, std::string>& section) {
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        auto it = section.find(key);
        if (it == section.end()) return std::nullopt;
        return it->second;
    };
    auto kind = get("kind");
    if (!kind) throw std::invalid_argument("space section needs kind=xpg|xw|xiso|xs");
    if (*kind == "xw") return SpaceSpec::xw();
    if (*kind == "xs") return SpaceSpec::xs();
    if (*kind == "xiso") {
        auto l = get("lambda");
        return SpaceSpec::xiso(l ? parse_rational(*l) : Rational(3));
    }
    if (*kind != "xpg") throw std::invalid_argument("unknown space kind '" + *kind + "'");

    auto rat = [&](const char* key) -> std::optional<Rational> {
        auto v = get(key);
        if (!v) return std::nullopt;
        return parse_rational(*v);
    };
    Rational l1 = rat("lambda1").value_or(Rational(1));
    Rational l2 = rat("lambda2").value_or(Rational(2));
    XpgOverrides o;
    o.a1 = rat("a1");
    o.a2 = rat("a2");
    o.a3 = rat("a3");
    o.a4 = rat("a4");
    o.p = rat("p");
    if (auto g = get("g")) {
        std::vector<Index> levels;
        for (Index i : parse_index_set(*g)) levels.push_back(i);
        o.g = std::move(levels);
    }
    std::size_t levels = 5;
    if (auto lv = get("levels")) levels = std::stoul(*lv);
    return SpaceSpec::xpg(make_xpg_params(l1, l2, levels, o));
}

// ------------------------------------------------------ structured norms

Rational norm_xpg(const SparseVector& x, const XpgParams& params) {
    Rational best = sup_norm(x);
    const Index top = x.max_index();
    std::vector<Rational> admissible;
    for (std::size_t j = 1;; ++j) {
        if (j > params.g.size())
            throw InsufficientLevels("extend g sequence: level " + std::to_string(j) +
                                     " is needed for index " + std::to_string(top));
        const Index gj = params.g[j - 1];
        const Index contributes_above = floor_u64(params.a1 * gj);  // i > a1 g_j
        if (contributes_above >= top) break;
        if (j + 1 > params.g.size())
            throw InsufficientLevels("extend g sequence: level " + std::to_string(j + 1) +
                                     " is needed for index " + std::to_string(top));
        const Index gnext = params.g[j];
        const Index excluded_hi = floor_u64(params.a2 * gj) + gnext;
        admissible.clear();
        for (const auto& [i, c] : x.entries()) {
            if (i <= contributes_above) continue;
            if (gnext <= i && i <= excluded_hi) continue;
            admissible.push_back(abs(c));
        }
        const std::size_t slots = std::min<std::size_t>(gj - 1, admissible.size());
        std::partial_sort(admissible.begin(), admissible.begin() + slots, admissible.end(),
                          std::greater<>());
        Rational sum(0);
        for (std::size_t k = 0; k < slots; ++k) sum += admissible[k];
        if (sum > best) best = sum;
    }
    return best;
}

bool in_dyadic_set(Index n) { return n >= 2 && (n & (n - 1)) == 0; }

double norm_xw(const SparseVector& x) {
    std::vector<double> on_d;
    std::vector<double> off_d;
    for (const auto& [i, c] : x.entries()) (in_dyadic_set(i) ? on_d : off_d).push_back(to_double(abs(c)));
    std::sort(on_d.begin(), on_d.end(), std::greater<>());
    std::sort(off_d.begin(), off_d.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t k = 0; k < on_d.size(); ++k) sum += on_d[k] / std::sqrt(static_cast<double>(k + 1));
    for (std::size_t k = 0; k < off_d.size(); ++k) sum += off_d[k] / static_cast<double>(k + 1);
    return sum;
}

double xw_indicator_norm(std::size_t in_d, std::size_t off_d) {
    double sum = 0.0;
    for (std::size_t k = 1; k <= in_d; ++k) sum += 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t k = 1; k <= off_d; ++k) sum += 1.0 / static_cast<double>(k);
    return sum;
}

Rational norm_xiso(const SparseVector& x, const Rational& lambda) {
    const Rational x1 = x.coefficient(1);
    const Rational x2 = x.coefficient(2);
    Rational first = abs(Rational(x1 / lambda + x2));
    Rational second = abs(Rational(x1 + x2 / lambda));
    Rational total(0);
    for (const auto& [i, c] : x.entries()) total += abs(c);
    Rational third = total / lambda;
    return std::max({first, second, third});
}

Rational norm_xs(const SparseVector& x) {
    Rational best(0);
    auto entries = x.entries();
    std::vector<Rational> eligible;
    for (Index k = 1; k * k <= x.max_index(); ++k) {
        const Index floor_index = k * k;
        eligible.clear();
        for (const auto& [i, c] : entries)
            if (i >= floor_index) eligible.push_back(abs(c));
        const std::size_t take = std::min<std::size_t>(k, eligible.size());
        std::partial_sort(eligible.begin(), eligible.begin() + take, eligible.end(), std::greater<>());
        Rational sum(0);
        for (std::size_t t = 0; t < take; ++t) sum += eligible[t];
        if (sum > best) best = sum;
        // Larger k only sees a subset of these indices with a looser cap.
        if (eligible.size() <= k) break;
    }
    return best;
}

Real norm(const SparseVector& x, const SpaceSpec& spec) {
    struct V {
        const SparseVector& x;
        Real operator()(const XpgSpace& s) const { return norm_xpg(x, s.params); }
        Real operator()(const XwSpace&) const { return Real::approx(norm_xw(x)); }
        Real operator()(const XisoSpace& s) const { return norm_xiso(x, s.lambda); }
        Real operator()(const XsSpace&) const { return norm_xs(x); }
    };
    return std::visit(V{x}, spec.kind());
}

// ------------------------------------------------------------------ oracle

namespace {

void check_budget(const SparseVector& x) {
    if (x.support_size() > kOracleMaxSupport)
        throw BudgetExceeded("oracle budget: support size " + std::to_string(x.support_size()) + " > " +
                             std::to_string(kOracleMaxSupport));
    if (x.max_index() > kOracleMaxIndex)
        throw BudgetExceeded("oracle budget: index " + std::to_string(x.max_index()) + " > " +
                             std::to_string(kOracleMaxIndex));
}

// Sum of weights over every subset mask, built one lowest bit at a time.
void subset_sums(const std::vector<Rational>& w, std::vector<Rational>& sums) {
    const std::size_t n = w.size();
    sums.assign(std::size_t{1} << n, Rational(0));
    for (std::size_t mask = 1; mask < sums.size(); ++mask) {
        const unsigned low = static_cast<unsigned>(std::countr_zero(mask));
        sums[mask] = sums[mask & (mask - 1)] + w[low];
    }
}

Rational oracle_xpg(const SparseVector& x, const XpgParams& params) {
    auto entries = x.entries();
    const std::size_t n = entries.size();
    Rational best(0);
    for (const auto& [i, c] : entries) best = std::max(best, abs(c));

    std::vector<Rational> weight(n);
    std::vector<Rational> sums;
    for (std::size_t j = 1; j <= params.g.size(); ++j) {
        const Index gj = params.g[j - 1];
        const Rational left = params.a1 * gj;
        bool any = false;
        for (std::size_t k = 0; k < n; ++k) any = any || Rational(entries[k].first) > left;
        if (!any) continue;
        if (j + 1 > params.g.size()) throw InsufficientLevels("oracle: extend g sequence");
        const Rational excl_lo(params.g[j]);
        const Rational excl_hi = excl_lo + params.a2 * gj;
        std::size_t below_gj = 0;  // support points that cannot sit in any F with min F = g_j
        std::size_t at_gj = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const Rational idx(entries[k].first);
            const bool counted = idx > left && !(excl_lo <= idx && idx <= excl_hi);
            weight[k] = counted ? abs(entries[k].second) : Rational(0);
            if (entries[k].first < gj) below_gj |= std::size_t{1} << k;
            if (entries[k].first == gj) at_gj |= std::size_t{1} << k;
        }
        subset_sums(weight, sums);
        for (std::size_t mask = 1; mask < sums.size(); ++mask) {
            if (mask & below_gj) continue;
            // F = {g_j} ∪ S ∪ padding, |F| = g_j: S \ {g_j} has at most g_j - 1 points.
            const auto extra = static_cast<Index>(std::popcount(mask & ~at_gj));
            if (extra > gj - 1) continue;
            if (sums[mask] > best) best = sums[mask];
        }
    }
    return best;
}

Rational oracle_xs(const SparseVector& x) {
    auto entries = x.entries();
    std::vector<Rational> weight;
    for (const auto& e : entries) weight.push_back(abs(e.second));
    std::vector<Rational> sums;
    subset_sums(weight, sums);
    Rational best(0);
    for (std::size_t mask = 1; mask < sums.size(); ++mask) {
        const auto size = static_cast<Index>(std::popcount(mask));
        const Index min_f = entries[static_cast<std::size_t>(std::countr_zero(mask))].first;
        // sqrt(min F) >= |F|  <=>  min F >= |F|^2
        if (min_f >= size * size && sums[mask] > best) best = sums[mask];
    }
    return best;
}

// Best total of sum_k weight(rank_k) * value_k over every assignment of the
// ranks 1..n to the n values, by DP over which values have been placed.
double best_assignment(const std::vector<double>& values, double (*weight)(std::size_t)) {
    const std::size_t n = values.size();
    std::vector<double> dp(std::size_t{1} << n, 0.0);
    for (std::size_t mask = 1; mask < dp.size(); ++mask) {
        const std::size_t rank = static_cast<std::size_t>(std::popcount(mask));
        double best = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (!(mask & (std::size_t{1} << k))) continue;
            best = std::max(best, dp[mask ^ (std::size_t{1} << k)] + weight(rank) * values[k]);
        }
        dp[mask] = best;
    }
    return dp.back();
}

double oracle_xw(const SparseVector& x) {
    std::vector<double> on_d;
    std::vector<double> off_d;
    for (const auto& [i, c] : x.entries()) (in_dyadic_set(i) ? on_d : off_d).push_back(to_double(abs(c)));
    auto u = [](std::size_t k) { return 1.0 / std::sqrt(static_cast<double>(k)); };
    auto v = [](std::size_t k) { return 1.0 / static_cast<double>(k); };
    return best_assignment(on_d, +u) + best_assignment(off_d, +v);
}

Rational oracle_xiso(const SparseVector& x, const Rational& lambda) {
    std::vector<Rational> dense(std::max<Index>(x.max_index(), 2), Rational(0));
    for (const auto& [i, c] : x.entries()) dense[i - 1] = c;
    std::vector<Rational> terms;
    terms.push_back(abs(Rational(dense[0] / lambda + dense[1])));
    terms.push_back(abs(Rational(dense[0] + dense[1] / lambda)));
    Rational l1(0);
    for (const auto& c : dense) l1 += abs(c);
    terms.push_back(l1 / lambda);
    return *std::max_element(terms.begin(), terms.end());
}

}  // namespace

Real norm_oracle(const SparseVector& x, const SpaceSpec& spec) {
    check_budget(x);
    if (x.is_zero()) return spec.exact() ? Real(0L) : Real::approx(0.0);
    struct V {
        const SparseVector& x;
        Real operator()(const XpgSpace& s) const { return oracle_xpg(x, s.params); }
        Real operator()(const XwSpace&) const { return Real::approx(oracle_xw(x)); }
        Real operator()(const XisoSpace& s) const { return oracle_xiso(x, s.lambda); }
        Real operator()(const XsSpace&) const { return oracle_xs(x); }
    };
    return std::visit(V{x}, spec.kind());
}

}  // namespace greedysum
