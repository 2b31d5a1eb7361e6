#include <doctest.h>

#include "oracles.hpp"

#include "greedysum/errors.hpp"
#include "greedysum/props.hpp"
#include "greedysum/sampling.hpp"

#include <json.hpp>

using namespace greedysum;

namespace {

const Family kFamilies[] = {Family::ag, Family::ag2, Family::pg, Family::pg2, Family::rpg2};

// Exhaustive pair sweep from the definitions, for small radii.
Real brute_pair_sweep(const SpaceSpec& spec, const Rational& lambda, PairFlavor flavor, unsigned radius) {
    Real worst(0L);
    const unsigned full = (1u << radius) - 1;
    auto set_of = [](unsigned mask) {
        std::vector<Index> v;
        for (unsigned i = 0; i < 32; ++i)
            if (mask & (1u << i)) v.push_back(i + 1);
        return IndexSet(std::move(v));
    };
    for (unsigned a = 1; a <= full; ++a) {
        const IndexSet sa = set_of(a);
        for (unsigned b = 0; b <= full; ++b) {
            const IndexSet sb = set_of(b);
            bool ok = true;
            switch (flavor) {
                case PairFlavor::democratic: ok = sa.size() <= sb.size(); break;
                case PairFlavor::max_conservative:
                    ok = (sb.empty() || sa.max() < sb.min()) &&
                         (lambda - 1) * Rational(sa.max()) + Rational(sa.size()) <= Rational(sb.size());
                    break;
                case PairFlavor::democratic_t2: {
                    bool outside = true;
                    for (Index i : sb) outside = outside && (i < sa.min() || i > sa.max());
                    ok = outside && (lambda - 1) * Rational(sa.max() - sa.min() + 1) + Rational(sa.size()) <=
                                        Rational(sb.size());
                    break;
                }
            }
            if (!ok) continue;
            const Real r =
                ratio(norm(SparseVector::indicator(sa), spec), norm(SparseVector::indicator(sb), spec));
            if (r > worst) worst = r;
        }
    }
    return worst;
}

}  // namespace

TEST_SUITE_BEGIN("props");

TEST_CASE("family and flavor names") {
    for (Family f : kFamilies) CHECK(parse_family(to_string(f)) == f);
    CHECK(parse_family("AG2") == Family::ag2);
    CHECK_THROWS(parse_family("ag3"));
    CHECK(parse_pair_flavor("max_conservative") == PairFlavor::max_conservative);
    CHECK(parse_pair_flavor("democratic-t2") == PairFlavor::democratic_t2);
    CHECK_THROWS(parse_pair_flavor("greedy"));
}

TEST_CASE("competitor families") {
    const SparseVector x = SparseVector::indicator(IndexSet{2, 3, 7});
    auto traces = [&](Family f, std::size_t m, const IndexSet& greedy) {
        std::vector<IndexSet> out;
        for (const auto& [set, interval] : competitor_sets(x, m, f, greedy)) {
            out.push_back(set);
            if (set.empty() || f == Family::ag) {
                CHECK(interval.empty());
                continue;
            }
            CHECK(interval.to_index_set().intersect(x.support()) == set);
            CHECK(interval.size() <= m);
        }
        return out;
    };
    CHECK(traces(Family::ag2, 2, {}) ==
          std::vector<IndexSet>{IndexSet{}, IndexSet{2}, IndexSet{2, 3}, IndexSet{3}, IndexSet{7}});
    CHECK(traces(Family::pg, 3, {}) == std::vector<IndexSet>{IndexSet{}, IndexSet{2}, IndexSet{2, 3}});
    CHECK(traces(Family::ag, 2, {}).size() == 7);
    // pg2: intervals must start at or below min L.
    CHECK(traces(Family::pg2, 2, IndexSet{3}) == std::vector<IndexSet>{IndexSet{}, IndexSet{2}, IndexSet{2, 3}, IndexSet{3}});
    // rpg2: intervals must reach max L; {2} alone cannot.
    CHECK(traces(Family::rpg2, 2, IndexSet{3}) ==
          std::vector<IndexSet>{IndexSet{}, IndexSet{2, 3}, IndexSet{3}, IndexSet{7}});
}

TEST_CASE("residual ratio worked examples") {
    const SpaceSpec xs = SpaceSpec::xs();
    const SparseVector x = SparseVector::indicator(IndexSet{1, 2, 3, 4});
    auto ag2 = residual_ratio(xs, x, 1, Rational(2), Family::ag2);
    auto pg2 = residual_ratio(xs, x, 1, Rational(2), Family::pg2);
    CHECK(ag2.worst_ratio == Real(1L));
    CHECK(ag2.worst_ratio >= pg2.worst_ratio);
    CHECK(replay(xs, ag2.witness) == ag2.worst_ratio);

    // ceil(lambda m) >= |supp| leaves nothing.
    auto trivial = residual_ratio(xs, x, 2, Rational(2), Family::ag);
    CHECK(trivial.worst_ratio == Real(0L));
    CHECK_THROWS_AS(residual_ratio(xs, x, 0, Rational(2), Family::ag), DomainError);

    // The isometric pair: greedy order 3 at m = 1 keeps the -s coordinate.
    const SpaceSpec iso = SpaceSpec::xiso(Rational(3));
    auto r = residual_ratio(iso, parse_vector("1:-4/5,2:1,3:1/10,4:1/10,5:1/20"), 1, Rational(3), Family::ag2);
    CHECK(r.worst_ratio <= Real(1L));
}

TEST_CASE("residual ratios match literal interval enumeration") {
    const std::vector<SpaceSpec> specs{SpaceSpec::xpg(xpg_preset()), SpaceSpec::xw(), SpaceSpec::xiso(Rational(3)),
                                       SpaceSpec::xs()};
    const Rational lambdas[] = {Rational(1), Rational(3, 2), Rational(2)};
    for (std::size_t s = 0; s < specs.size(); ++s) {
        VectorSampler sampler = default_sampler(specs[s]);
        sampler.max_support = 6;
        sampler.min_support = 2;
        sampler.max_numerator = 4;
        sampler.max_denominator = 2;
        if (specs[s].name() == "xpg") sampler.window.resize(std::min<std::size_t>(sampler.window.size(), 40));
        if (specs[s].name() == "xs") sampler.window = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 16, 17, 18, 25, 26};
        for (std::uint64_t i = 0; i < 60; ++i) {
            auto rng = instance_rng(11, s * 1000 + i);
            const SparseVector x = sample_vector(rng, sampler);
            for (const Rational& l : lambdas)
                for (std::size_t m = 1; m <= 2; ++m)
                    for (Family f : kFamilies) {
                        CAPTURE(to_string(x));
                        CAPTURE(m);
                        CAPTURE(to_string(f));
                        const auto got = residual_ratio(specs[s], x, m, l, f, 1000);
                        const Real want = oracle::residual_ratio(specs[s], x, m, l, f);
                        if (specs[s].exact()) CHECK(got.worst_ratio == want);
                        else CHECK(relative_difference(got.worst_ratio, want) <= 1e-12);
                        CHECK(relative_difference(replay(specs[s], got.witness), got.worst_ratio) <= 1e-12);
                    }
        }
    }
}

TEST_CASE("set pair conditions") {
    CHECK_FALSE(pair_condition_failure(IndexSet{19, 20}, IndexSet{82, 83, 84}, Rational(1),
                                       PairFlavor::max_conservative));
    CHECK(pair_condition_failure(IndexSet{19, 20}, IndexSet{82, 83, 84}, Rational(2), PairFlavor::max_conservative)
              .value() == "(lambda - 1) max A + |A| <= |B|");
    CHECK(pair_condition_failure(IndexSet{5}, IndexSet{3, 9}, Rational(1), PairFlavor::max_conservative).value() ==
          "A < B");
    CHECK(pair_condition_failure(IndexSet{1}, IndexSet{1, 2}, Rational(2), PairFlavor::democratic_t2).value() ==
          "B surrounds A");
    CHECK_FALSE(pair_condition_failure(IndexSet::range(16, 19), IndexSet::range(1, 8), Rational(2),
                                       PairFlavor::democratic_t2));
    CHECK(pair_condition_failure(IndexSet{1, 2}, IndexSet{3}, Rational(1), PairFlavor::democratic).value() ==
          "|A| <= |B|");
    CHECK_THROWS_WITH_AS(set_pair_ratio(SpaceSpec::xs(), IndexSet{1}, IndexSet{1, 2}, Rational(2),
                                        PairFlavor::democratic_t2),
                         doctest::Contains("surrounds"), ConstraintViolation);
    auto r = set_pair_ratio(SpaceSpec::xs(), IndexSet::range(16, 19), IndexSet::range(1, 8), Rational(2),
                            PairFlavor::democratic_t2);
    CHECK(r.worst_ratio == Real(2L));
}

TEST_CASE("pair sweeps match brute force") {
    const std::vector<SpaceSpec> specs{SpaceSpec::xpg(xpg_preset()), SpaceSpec::xw(), SpaceSpec::xiso(Rational(3)),
                                       SpaceSpec::xs()};
    for (const auto& spec : specs)
        for (PairFlavor flavor : {PairFlavor::democratic, PairFlavor::max_conservative, PairFlavor::democratic_t2})
            for (const Rational& l : {Rational(1), Rational(2)}) {
                CAPTURE(spec.name());
                CAPTURE(to_string(flavor));
                const auto got = set_pair_sweep(spec, l, flavor, 7);
                const Real want = brute_pair_sweep(spec, l, flavor, 7);
                CHECK(relative_difference(got.worst_ratio, want) <= 1e-12);
                CHECK(relative_difference(replay(spec, got.witness), got.worst_ratio) <= 1e-12);
                const auto& w = std::get<PairWitness>(got.witness);
                CHECK_FALSE(pair_condition_failure(w.a, w.b, l, flavor));
            }
    CHECK_THROWS_AS(set_pair_sweep(SpaceSpec::xs(), Rational(1), PairFlavor::democratic, 21), BudgetExceeded);
}

TEST_CASE("slc2 instances") {
    const SpaceSpec xs = SpaceSpec::xs();
    const SparseVector x = parse_vector("1:1/2,30:-1");
    auto r = slc2_instance(xs, x, IndexSet{10, 11}, IndexSet{2, 3, 4, 5, 40}, parse_signs("11:-1"), SignPattern{},
                           Rational(2));
    CHECK(r.worst_ratio == replay(xs, r.witness));
    CHECK_THROWS_WITH_AS(slc2_instance(xs, parse_vector("1:2"), IndexSet{10}, IndexSet{2, 3}, {}, {}, Rational(1)),
                         doctest::Contains("||x||_inf"), ConstraintViolation);
    CHECK_THROWS_WITH_AS(slc2_instance(xs, x, IndexSet{10, 11}, IndexSet{2, 3}, {}, {}, Rational(2)),
                         doctest::Contains("s(A)"), ConstraintViolation);
    CHECK_THROWS_WITH_AS(slc2_instance(xs, x, IndexSet{10}, IndexSet{1, 2}, {}, {}, Rational(1)),
                         doctest::Contains("supp(x)"), ConstraintViolation);
    CHECK_THROWS_WITH_AS(slc2_instance(xs, x, IndexSet{10, 12}, IndexSet{2, 11, 13, 14, 15}, {}, {}, Rational(1)),
                         doctest::Contains("B surrounds"), ConstraintViolation);
    CHECK_THROWS_WITH_AS(slc2_instance(xs, parse_vector("11:1"), IndexSet{10, 12}, IndexSet{2, 3}, {}, {}, Rational(1)),
                         doctest::Contains("x surrounds"), ConstraintViolation);
}

TEST_CASE("quasi-greedy constants") {
    const SpaceSpec iso = SpaceSpec::xiso(Rational(3));
    const std::vector<SparseVector> corpus{parse_vector("1:-4/5,2:1"), parse_vector("1:1,2:1,3:1")};
    auto q = qg_constants(iso, corpus);
    CHECK(q.suppression.worst_ratio == Real(Rational(12, 11)));
    CHECK(replay(iso, q.suppression.witness) == Real(Rational(12, 11)));
    CHECK(replay(iso, q.quasi_greedy.witness) == q.quasi_greedy.worst_ratio);
    CHECK_THROWS_AS(qg_constants(iso, std::vector<SparseVector>{}), DomainError);

    // A 1-unconditional space never exceeds 1.
    const SpaceSpec xs = SpaceSpec::xs();
    VectorSampler sampler = default_sampler(xs);
    std::vector<SparseVector> sample;
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = instance_rng(4, i);
        sample.push_back(sample_vector(rng, sampler));
    }
    auto u = qg_constants(xs, sample, 4096);
    CHECK(u.quasi_greedy.worst_ratio == Real(1L));
    CHECK(u.suppression.worst_ratio == Real(1L));
}

TEST_CASE("truncation and UL checks") {
    const SpaceSpec xs = SpaceSpec::xs();
    const std::vector<SparseVector> corpus{parse_vector("16:3,17:1,18:-1,19:1/2")};
    const std::vector<Rational> grid{Rational(1, 2), Rational(1)};
    auto t = truncation_check(xs, corpus, grid);
    CHECK(t.instances_checked == 2);
    CHECK(t.worst_ratio == replay(xs, t.witness));
    CHECK(t.worst_ratio <= Real(1L));

    const std::vector<Rational> coeffs{Rational(1), Rational(-2), Rational(1, 2)};
    auto ul = ul_check(xs, IndexSet{16, 17, 18}, coeffs, Rational(1));
    REQUIRE(ul.details.size() == 2);
    CHECK(ul.details[0].first == "lower_slack");
    // ||y|| = 7/2, ||1_A|| = 3: lower 3/4, upper 12.
    CHECK(ul.details[0].second == Real(Rational(14, 3)));
    CHECK(ul.details[1].second == Real(Rational(7, 24)));
    CHECK(ul.worst_ratio == Real(Rational(7, 24)));
    CHECK(replay(xs, ul.witness) == ul.worst_ratio);
    CHECK_THROWS_AS(ul_check(xs, IndexSet{}, std::vector<Rational>{}, Rational(1)), DomainError);
    CHECK_THROWS_AS(ul_check(xs, IndexSet{1, 2}, coeffs, Rational(1)), ConstraintViolation);
}

TEST_CASE("iso witness interval") {
    CHECK(iso_witness_interval(Rational(3)) == std::make_pair(Rational(3, 4), Rational(1)));
    CHECK_FALSE(iso_witness_interval(Rational(2)));
    CHECK_FALSE(iso_witness_interval(Rational(3, 2)));
    CHECK_FALSE(iso_witness_interval(Rational(1)));
    CHECK(iso_witness_interval(Rational(5)) == std::make_pair(Rational(5, 6), Rational(1)));
}

TEST_CASE("report serialization") {
    PropertyReport r;
    r.property = "pair";
    r.lambda = Rational(2);
    r.worst_ratio = Real(Rational(5, 2));
    r.witness = PairWitness{IndexSet::range(165, 184), IndexSet::range(821, 841)};
    r.seed = 7;
    CHECK(report_csv_header() == "property,lambda,ratio,witness,exhaustive,seed");
    CHECK(report_csv_row(r) == "pair,2,5/2,A={165..184};B={821..841},true,7");
    CHECK(report_csv_row(r, false) == "pair,2,5/2,,true,7");
    auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["ratio"] == "5/2");
    CHECK(j["ratio_value"].get<double>() == 2.5);
    CHECK(j["seed"] == 7);
    CHECK(describe(std::monostate{}).empty());
    CHECK(report_csv_row(PropertyReport{}).find(",,") != std::string::npos);

    PropertyReport other = r;
    other.worst_ratio = Real(3L);
    other.instances_checked = 4;
    other.exhaustive = false;
    absorb(r, other);
    CHECK(r.worst_ratio == Real(3L));
    CHECK(r.instances_checked == 4);
    CHECK_FALSE(r.exhaustive);
}

TEST_SUITE_END();
