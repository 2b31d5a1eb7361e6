#include "greedysum/props.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <map>
#include <sstream>

namespace greedysum {

// ------------------------------------------------------------------ names

std::string_view to_string(Family f) {
    switch (f) {
        case Family::ag: return "ag";
        case Family::ag2: return "ag2";
        case Family::pg: return "pg";
        case Family::pg2: return "pg2";
        case Family::rpg2: return "rpg2";
    }
    return "?";
}

namespace {
std::string normalized(std::string_view text) {
    std::string s(text);
    for (auto& c : s) c = c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}
}  // namespace

Family parse_family(std::string_view text) {
    const std::string s = normalized(text);
    for (Family f : {Family::ag, Family::ag2, Family::pg, Family::pg2, Family::rpg2})
        if (s == to_string(f)) return f;
    throw std::invalid_argument("unknown family '" + std::string(text) + "' (ag|ag2|pg|pg2|rpg2)");
}

std::string_view to_string(PairFlavor f) {
    switch (f) {
        case PairFlavor::democratic: return "democratic";
        case PairFlavor::max_conservative: return "max-conservative";
        case PairFlavor::democratic_t2: return "democratic-t2";
    }
    return "?";
}

PairFlavor parse_pair_flavor(std::string_view text) {
    const std::string s = normalized(text);
    for (PairFlavor f : {PairFlavor::democratic, PairFlavor::max_conservative, PairFlavor::democratic_t2})
        if (s == to_string(f)) return f;
    throw std::invalid_argument("unknown flavor '" + std::string(text) +
                                "' (democratic|max-conservative|democratic-t2)");
}

// ----------------------------------------------------------------- replay

namespace {

Real ul_ratio(const SpaceSpec& spec, const UlWitness& w, Real* lower_slack, Real* upper_slack) {
    Rational lo_mod;
    Rational hi_mod(0);
    bool first = true;
    for (Index i : w.a) {
        Rational m = abs(w.y.coefficient(i));
        if (first || m < lo_mod) lo_mod = m;
        hi_mod = std::max(hi_mod, m);
        first = false;
    }
    const Real middle = norm(w.y, spec);
    const Real ind = norm(SparseVector::indicator(w.a), spec);
    const Real lower = Real(Rational(lo_mod / (2 * w.c_qg))) * ind;
    const Real upper = Real(Rational(2 * w.c_qg * hi_mod)) * ind;
    if (lower_slack) *lower_slack = ratio(middle, lower);
    if (upper_slack) *upper_slack = ratio(middle, upper);
    return max(ratio(middle, upper), ratio(lower, middle));
}

}  // namespace

Real replay(const SpaceSpec& spec, const Witness& witness) {
    struct V {
        const SpaceSpec& spec;
        Real operator()(const std::monostate&) const { return Real(0L); }
        Real operator()(const ResidualWitness& w) const {
            return ratio(norm(residual(w.x, w.greedy), spec), norm(residual(w.x, w.competitor), spec));
        }
        Real operator()(const PairWitness& w) const {
            return ratio(norm(SparseVector::indicator(w.a), spec), norm(SparseVector::indicator(w.b), spec));
        }
        Real operator()(const Slc2Witness& w) const {
            return ratio(norm(w.x + SparseVector::signed_indicator(w.a, w.eps), spec),
                         norm(w.x + SparseVector::signed_indicator(w.b, w.delta), spec));
        }
        Real operator()(const GreedyProjectionWitness& w) const {
            const SparseVector part = w.suppression ? residual(w.x, w.greedy) : project(w.x, w.greedy);
            return ratio(norm(part, spec), norm(w.x, spec));
        }
        Real operator()(const TruncationWitness& w) const {
            return ratio(norm(truncate(w.x, w.level), spec), norm(w.x, spec));
        }
        Real operator()(const UlWitness& w) const { return ul_ratio(spec, w, nullptr, nullptr); }
    };
    return std::visit(V{spec}, witness);
}

void absorb(PropertyReport& into, const PropertyReport& other) {
    if (other.worst_ratio > into.worst_ratio) {
        into.worst_ratio = other.worst_ratio;
        into.witness = other.witness;
        into.details = other.details;
    }
    into.instances_checked += other.instances_checked;
    into.exhaustive = into.exhaustive && other.exhaustive;
}

// ---------------------------------------------------------------- output

namespace {

std::string interval_string(const Interval& iv) {
    if (iv.empty()) return "[]";
    return "[" + std::to_string(iv.lo()) + "," + std::to_string(iv.hi()) + "]";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string describe(const Witness& witness) {
    struct V {
        std::string operator()(const std::monostate&) const { return ""; }
        std::string operator()(const ResidualWitness& w) const {
            return "x=" + to_string(w.x) + ";m=" + std::to_string(w.m) + ";family=" +
                   std::string(to_string(w.family)) + ";greedy=" + to_string(w.greedy) +
                   ";competitor=" + to_string(w.competitor) + ";interval=" + interval_string(w.interval);
        }
        std::string operator()(const PairWitness& w) const {
            return "A=" + to_string(w.a) + ";B=" + to_string(w.b);
        }
        std::string operator()(const Slc2Witness& w) const {
            return "x=" + to_string(w.x) + ";A=" + to_string(w.a) + ";B=" + to_string(w.b) + ";eps=" +
                   to_string(w.eps) + ";delta=" + to_string(w.delta);
        }
        std::string operator()(const GreedyProjectionWitness& w) const {
            return "x=" + to_string(w.x) + ";greedy=" + to_string(w.greedy) +
                   (w.suppression ? ";suppression" : ";projection");
        }
        std::string operator()(const TruncationWitness& w) const {
            return "x=" + to_string(w.x) + ";a=" + to_string(w.level);
        }
        std::string operator()(const UlWitness& w) const {
            return "A=" + to_string(w.a) + ";y=" + to_string(w.y) + ";C=" + to_string(w.c_qg);
        }
    };
    return std::visit(V{}, witness);
}

std::string report_csv_header() { return "property,lambda,ratio,witness,exhaustive,seed"; }

std::string report_csv_row(const PropertyReport& r, bool include_witness) {
    std::ostringstream os;
    os << csv_field(r.property) << ',' << to_string(r.lambda) << ',' << to_string(r.worst_ratio) << ','
       << csv_field(include_witness ? describe(r.witness) : std::string()) << ','
       << (r.exhaustive ? "true" : "false") << ',' << (r.seed ? std::to_string(*r.seed) : std::string());
    return os.str();
}

std::string report_json(const PropertyReport& r) {
    nlohmann::ordered_json j;
    j["property"] = r.property;
    j["lambda"] = to_string(r.lambda);
    j["ratio"] = to_string(r.worst_ratio);
    j["ratio_value"] = r.worst_ratio.is_infinite() ? nlohmann::ordered_json("inf")
                                                   : nlohmann::ordered_json(r.worst_ratio.to_double());
    j["exact"] = r.worst_ratio.is_exact();
    j["witness"] = describe(r.witness);
    j["exhaustive"] = r.exhaustive;
    j["instances_checked"] = r.instances_checked;
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    auto& details = j["details"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.details) details[k] = to_string(v);
    return j.dump();
}

// ------------------------------------------------------------- competitors

namespace {

inline constexpr std::size_t kMaxSubsetCompetitors = 2'000'000;

void all_small_subsets(const std::vector<Index>& supp, std::size_t m,
                       std::vector<std::pair<IndexSet, Interval>>& out) {
    std::size_t total = 0;
    for (std::size_t size = 1; size <= std::min(m, supp.size()); ++size) {
        // C(n, size) with early exit.
        long double c = 1;
        for (std::size_t i = 1; i <= size; ++i) c = c * static_cast<long double>(supp.size() - size + i) / i;
        total += static_cast<std::size_t>(c + 0.5L);
        if (total > kMaxSubsetCompetitors)
            throw BudgetExceeded("ag competitor family exceeds " + std::to_string(kMaxSubsetCompetitors) + " sets");
    }
    for (std::size_t size = 1; size <= std::min(m, supp.size()); ++size) {
        std::vector<bool> chosen(supp.size(), false);
        std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            std::vector<Index> set;
            for (std::size_t k = 0; k < supp.size(); ++k)
                if (chosen[k]) set.push_back(supp[k]);
            out.emplace_back(IndexSet(std::move(set)), Interval());
        } while (std::prev_permutation(chosen.begin(), chosen.end()));
    }
}

}  // namespace

std::vector<std::pair<IndexSet, Interval>> competitor_sets(const SparseVector& x, std::size_t m,
                                                           Family family, const IndexSet& greedy) {
    std::vector<std::pair<IndexSet, Interval>> out;
    out.emplace_back(IndexSet(), Interval());
    std::vector<Index> s;
    for (const auto& e : x.entries()) s.push_back(e.first);
    const std::size_t n = s.size();

    if (family == Family::ag) {
        all_small_subsets(s, m, out);
        return out;
    }
    if (family == Family::pg) {
        // Distinct traces of [1, n'] for n' <= m, each realized by S_{max trace}.
        for (std::size_t b = 0; b < n && s[b] <= m; ++b)
            out.emplace_back(IndexSet(std::vector<Index>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(b + 1))),
                             Interval(1, s[b]));
        return out;
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n && s[b] - s[a] + 1 <= m; ++b) {
            // Every interval with trace s[a..b] lies within (prev, next).
            const Index prev = a > 0 ? s[a - 1] : 0;
            Interval realized(s[a], s[b]);
            if (family == Family::pg2) {
                // Smallest possible min I: max(prev + 1, s[b] - m + 1, 1).
                const Index lo = std::max<Index>({prev + 1, s[b] + 1 > m ? s[b] + 1 - m : 1, 1});
                if (!greedy.empty() && greedy.min() < lo) continue;
                realized = Interval(lo, s[b]);
            } else if (family == Family::rpg2) {
                // Largest possible max I: min(next - 1, s[a] + m - 1).
                Index hi = s[a] + m - 1;
                if (b + 1 < n) hi = std::min(hi, s[b + 1] - 1);
                if (!greedy.empty() && greedy.max() > hi) continue;
                realized = Interval(s[a], hi);
            }
            out.emplace_back(IndexSet(std::vector<Index>(s.begin() + static_cast<std::ptrdiff_t>(a),
                                                         s.begin() + static_cast<std::ptrdiff_t>(b + 1))),
                             realized);
        }
    }
    return out;
}

namespace {

class ResidualCache {
public:
    ResidualCache(const SpaceSpec& spec, const SparseVector& x) : spec_(spec), x_(x) {}

    const Real& norm_without(const IndexSet& removed) {
        auto it = cache_.find(removed);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(removed, norm(residual(x_, removed), spec_)).first->second;
    }

private:
    const SpaceSpec& spec_;
    const SparseVector& x_;
    std::map<IndexSet, Real> cache_;
};

Infimum infimum_with(ResidualCache& cache, const SparseVector& x, std::size_t m, Family family,
                     const IndexSet& greedy) {
    Infimum best;
    bool first = true;
    for (auto& [set, interval] : competitor_sets(x, m, family, greedy)) {
        const Real& v = cache.norm_without(set);
        if (first || v < best.value) {
            best.value = v;
            best.argmin = set;
            best.interval = interval;
            first = false;
        }
    }
    return best;
}

}  // namespace

Infimum competitor_infimum(const SpaceSpec& spec, const SparseVector& x, std::size_t m, Family family,
                           const IndexSet& greedy) {
    ResidualCache cache(spec, x);
    return infimum_with(cache, x, m, family, greedy);
}

PropertyReport residual_ratio(const SpaceSpec& spec, const SparseVector& x, std::size_t m,
                              const Rational& lambda, Family family, std::size_t cap) {
    if (m == 0) throw DomainError("residual_ratio needs m >= 1");
    PropertyReport report;
    report.property = "residual-" + std::string(to_string(family));
    report.lambda = lambda;
    report.instances_checked = 1;
    report.exhaustive = true;

    const std::size_t order = lambda_order(lambda, m);
    if (order >= x.support_size()) {
        // The greedy sum takes the whole support; the residual vanishes.
        report.worst_ratio = Real(0L);
        report.witness = ResidualWitness{x, m, family, x.support(), IndexSet(), Interval()};
        return report;
    }

    ResidualCache cache(spec, x);
    const GreedyOutcome greedy = greedy_sets(x, order, cap);
    const bool shared = family == Family::ag || family == Family::ag2 || family == Family::pg;
    std::optional<Infimum> common;
    if (shared) common = infimum_with(cache, x, m, family, IndexSet());

    bool first = true;
    for (const IndexSet& lam : greedy.sets) {
        const Infimum inf = shared ? *common : infimum_with(cache, x, m, family, lam);
        const Real r = ratio(cache.norm_without(lam), inf.value);
        if (first || r > report.worst_ratio) {
            report.worst_ratio = r;
            report.witness = ResidualWitness{x, m, family, lam, inf.argmin, inf.interval};
            first = false;
        }
    }
    return report;
}

// --------------------------------------------------------------- set pairs

std::optional<std::string> pair_condition_failure(const IndexSet& a, const IndexSet& b,
                                                  const Rational& lambda, PairFlavor flavor) {
    if (lambda < 1) return "lambda >= 1";
    const Rational size_a(a.size());
    const Rational size_b(b.size());
    switch (flavor) {
        case PairFlavor::democratic:
            if (a.size() > b.size()) return "|A| <= |B|";
            return std::nullopt;
        case PairFlavor::max_conservative: {
            if (!a.empty() && !b.empty() && !(a.max() < b.min())) return "A < B";
            const Rational max_a(a.empty() ? Index{0} : a.max());
            if (Rational((lambda - 1) * max_a + size_a) > size_b) return "(lambda - 1) max A + |A| <= |B|";
            return std::nullopt;
        }
        case PairFlavor::democratic_t2: {
            const Rational s_a(spread(a));
            if (Rational((lambda - 1) * s_a + size_a) > size_b) return "(lambda - 1) s(A) + |A| <= |B|";
            if (!surrounds(b, a)) return "B surrounds A";
            return std::nullopt;
        }
    }
    return std::nullopt;
}

PropertyReport set_pair_ratio(const SpaceSpec& spec, const IndexSet& a, const IndexSet& b,
                              const Rational& lambda, PairFlavor flavor) {
    if (auto failure = pair_condition_failure(a, b, lambda, flavor))
        throw ConstraintViolation("violated: " + *failure);
    PropertyReport report;
    report.property = std::string(to_string(flavor));
    report.lambda = lambda;
    report.instances_checked = 1;
    report.witness = PairWitness{a, b};
    report.worst_ratio = replay(spec, report.witness);
    return report;
}

namespace {

using Mask = std::uint32_t;

IndexSet mask_to_set(Mask mask) {
    std::vector<Index> v;
    for (Index i = 0; mask; ++i, mask >>= 1)
        if (mask & 1u) v.push_back(i + 1);
    return IndexSet(std::move(v));
}

// For a region R of [1..radius]: best[k] = the B ⊆ R with |B| >= k of least
// norm (k = 0..|R|).
struct RegionMinima {
    std::vector<std::pair<Real, Mask>> best;
};

RegionMinima region_minima(Mask region, const std::vector<Real>& norms) {
    const auto size = static_cast<std::size_t>(std::popcount(region));
    std::vector<std::optional<std::pair<Real, Mask>>> exact(size + 1);
    // Every submask of the region, including the empty one.
    for (Mask sub = region;; sub = (sub - 1) & region) {
        const auto k = static_cast<std::size_t>(std::popcount(sub));
        if (!exact[k] || norms[sub] < exact[k]->first) exact[k] = std::make_pair(norms[sub], sub);
        if (sub == 0) break;
    }
    RegionMinima out;
    out.best.resize(size + 1);
    for (std::size_t k = size + 1; k-- > 0;) {
        out.best[k] = *exact[k];
        if (k < size && out.best[k + 1].first < out.best[k].first) out.best[k] = out.best[k + 1];
    }
    return out;
}

std::size_t ceil_size(const Rational& q) {
    mpz_class c = ceil_of(q);
    return c < 0 ? 0 : static_cast<std::size_t>(c.get_ui());
}

}  // namespace

PropertyReport set_pair_sweep(const SpaceSpec& spec, const Rational& lambda, PairFlavor flavor,
                              std::size_t radius) {
    if (radius == 0 || radius > 20) throw BudgetExceeded("set_pair_sweep radius must be in [1, 20]");
    if (lambda < 1) throw DomainError("lambda must be at least 1");
    const Mask full = (Mask{1} << radius) - 1;
    std::vector<Real> norms(std::size_t{1} << radius);
    for (Mask mask = 0; mask <= full; ++mask) norms[mask] = norm(SparseVector::indicator(mask_to_set(mask)), spec);

    PropertyReport report;
    report.property = std::string(to_string(flavor)) + "-sweep";
    report.lambda = lambda;
    report.exhaustive = true;
    report.worst_ratio = Real(0L);

    auto consider = [&](Mask a, Mask b) {
        ++report.instances_checked;
        const Real r = ratio(norms[a], norms[b]);
        if (report.instances_checked == 1 || r > report.worst_ratio) {
            report.worst_ratio = r;
            report.witness = PairWitness{mask_to_set(a), mask_to_set(b)};
        }
    };

    if (flavor == PairFlavor::democratic) {
        const RegionMinima all = region_minima(full, norms);
        for (Mask a = 1; a <= full; ++a) consider(a, all.best[static_cast<std::size_t>(std::popcount(a))].second);
        return report;
    }

    std::map<std::pair<Index, Index>, RegionMinima> regions;
    for (Mask a = 1; a <= full; ++a) {
        const IndexSet set_a = mask_to_set(a);
        Index lo = 1;
        Index hi = set_a.max();  // max_conservative forbids B below max A
        if (flavor == PairFlavor::democratic_t2) lo = set_a.min();
        const Rational lead = flavor == PairFlavor::democratic_t2 ? Rational(spread(set_a)) : Rational(set_a.max());
        const std::size_t need = ceil_size(Rational((lambda - 1) * lead + set_a.size()));
        auto key = std::make_pair(lo, hi);
        auto it = regions.find(key);
        if (it == regions.end()) {
            Mask hull = 0;
            for (Index i = lo; i <= hi; ++i) hull |= Mask{1} << (i - 1);
            it = regions.emplace(key, region_minima(full & ~hull, norms)).first;
        }
        const auto& best = it->second.best;
        if (need >= best.size()) continue;  // no admissible B inside [1..radius]
        consider(a, best[need].second);
    }
    return report;
}

// -------------------------------------------------------------------- SLC2

PropertyReport slc2_instance(const SpaceSpec& spec, const SparseVector& x, const IndexSet& a,
                             const IndexSet& b, const SignPattern& eps, const SignPattern& delta,
                             const Rational& lambda) {
    if (lambda < 1) throw DomainError("lambda must be at least 1");
    if (sup_norm(x) > 1) throw ConstraintViolation("violated: ||x||_inf <= 1");
    if (Rational((lambda - 1) * spread(a) + a.size()) > Rational(b.size()))
        throw ConstraintViolation("violated: (lambda - 1) s(A) + |A| <= |B|");
    const IndexSet supp = x.support();
    if (!b.intersect(supp).empty()) throw ConstraintViolation("violated: B ∩ supp(x) = ∅");
    if (!surrounds(b, a)) throw ConstraintViolation("violated: B surrounds A");
    if (!surrounds(supp, a)) throw ConstraintViolation("violated: x surrounds A");

    PropertyReport report;
    report.property = "slc2";
    report.lambda = lambda;
    report.instances_checked = 1;
    report.witness = Slc2Witness{x, a, b, eps, delta};
    report.worst_ratio = replay(spec, report.witness);
    return report;
}

// ------------------------------------------------------------ quasi-greedy

QgReport qg_constants(const SpaceSpec& spec, std::span<const SparseVector> corpus, std::size_t cap) {
    if (corpus.empty()) throw DomainError("qg_constants needs a nonempty corpus");
    QgReport out;
    out.quasi_greedy.property = "quasi-greedy";
    out.suppression.property = "suppression-quasi-greedy";
    bool first = true;
    for (const SparseVector& x : corpus) {
        if (x.is_zero()) continue;
        const Real base = norm(x, spec);
        for (std::size_t m = 0; m <= x.support_size(); ++m) {
            for (const IndexSet& lam : greedy_sets(x, m, cap).sets) {
                const Real q = ratio(norm(project(x, lam), spec), base);
                const Real s = ratio(norm(residual(x, lam), spec), base);
                out.quasi_greedy.instances_checked++;
                out.suppression.instances_checked++;
                if (first || q > out.quasi_greedy.worst_ratio) {
                    out.quasi_greedy.worst_ratio = q;
                    out.quasi_greedy.witness = GreedyProjectionWitness{x, lam, false};
                }
                if (first || s > out.suppression.worst_ratio) {
                    out.suppression.worst_ratio = s;
                    out.suppression.witness = GreedyProjectionWitness{x, lam, true};
                }
                first = false;
            }
        }
    }
    return out;
}

PropertyReport truncation_check(const SpaceSpec& spec, std::span<const SparseVector> corpus,
                                std::span<const Rational> a_grid) {
    PropertyReport report;
    report.property = "truncation";
    report.worst_ratio = Real(0L);
    for (const SparseVector& x : corpus) {
        if (x.is_zero()) continue;
        const Real base = norm(x, spec);
        for (const Rational& a : a_grid) {
            const Real r = ratio(norm(truncate(x, a), spec), base);
            report.instances_checked++;
            if (report.instances_checked == 1 || r > report.worst_ratio) {
                report.worst_ratio = r;
                report.witness = TruncationWitness{x, a};
            }
        }
    }
    return report;
}

PropertyReport ul_check(const SpaceSpec& spec, const IndexSet& a, std::span<const Rational> coeffs,
                        const Rational& c_qg) {
    if (a.empty()) throw DomainError("ul_check needs a nonempty A");
    if (coeffs.size() != a.size())
        throw ConstraintViolation("violated: one coefficient per element of A");
    if (c_qg <= 0) throw DomainError("quasi-greedy constant must be positive");
    std::vector<SparseVector::Entry> entries;
    std::size_t k = 0;
    for (Index i : a) entries.emplace_back(i, coeffs[k++]);
    UlWitness w{a, SparseVector(std::move(entries)), c_qg};

    PropertyReport report;
    report.property = "ul";
    report.instances_checked = 1;
    Real lower_slack;
    Real upper_slack;
    report.worst_ratio = ul_ratio(spec, w, &lower_slack, &upper_slack);
    report.details = {{"lower_slack", lower_slack}, {"upper_slack", upper_slack}};
    report.witness = std::move(w);
    return report;
}

std::optional<std::pair<Rational, Rational>> iso_witness_interval(const Rational& lambda) {
    if (lambda <= 1) return std::nullopt;
    const Rational lo = std::max(Rational(1 / (lambda - 1)), Rational(lambda / (lambda + 1)));
    if (lo >= 1) return std::nullopt;
    return std::make_pair(lo, Rational(1));
}

}  // namespace greedysum
