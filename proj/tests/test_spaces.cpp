#include <doctest.h>

#include "oracles.hpp"

#include "greedysum/errors.hpp"
#include "greedysum/sampling.hpp"
#include "greedysum/spaces.hpp"

#include <cmath>

using namespace greedysum;

TEST_SUITE_BEGIN("spaces");

TEST_CASE("g sequence") {
    CHECK(gen_g_sequence(Rational(7), 5) == std::vector<Index>{1, 9, 82, 821, 9032});
    CHECK(gen_g_sequence(Rational(7), 1) == std::vector<Index>{1});
    CHECK(gen_g_sequence(Rational(7), 2) == std::vector<Index>{1, 9});
    CHECK_THROWS_AS(gen_g_sequence(Rational(7), 0), DomainError);
    const auto g = gen_g_sequence(Rational(15, 2), 6);
    for (std::size_t n = 1; n < g.size(); ++n) CHECK(Rational(g[n]) > (Rational(15, 2) + n) * g[n - 1]);
}

TEST_CASE("preset parameters") {
    const XpgParams p = xpg_preset();
    CHECK(p.lambda1 == 1);
    CHECK(p.lambda2 == 2);
    CHECK(p.a1 == 2);
    CHECK(p.a2 == Rational(1, 2));
    CHECK(p.a3 == Rational(1, 4));
    CHECK(p.a4 == Rational(1, 4));
    CHECK(p.p == 7);
    CHECK(p.g == std::vector<Index>{1, 9, 82, 821, 9032});
    CHECK_NOTHROW(p.validate());
    CHECK(make_xpg_params(Rational(1), Rational(2), 5) == p);
    CHECK(xpg_preset(6).g.back() == 108385);
}

TEST_CASE("parameter construction and validation") {
    XpgOverrides o;
    o.a1 = Rational(6, 5);
    o.a3 = Rational(1, 5);
    o.a4 = Rational(1, 2);
    o.a2 = Rational(6, 5);
    o.p = Rational(7);
    const XpgParams p = make_xpg_params(Rational(3, 2), Rational(3), 4, o);
    CHECK(p.a2 == Rational(6, 5));

    CHECK_THROWS_AS(make_xpg_params(Rational(2), Rational(2), 3), DomainError);
    CHECK_THROWS_AS(make_xpg_params(Rational(1, 2), Rational(2), 3), DomainError);

    XpgOverrides bad;
    bad.a2 = Rational(9, 10);  // the window at (3/2, 3) is (9/10, 3/2), open
    bad.a1 = Rational(6, 5);
    bad.a3 = Rational(1, 5);
    bad.a4 = Rational(1, 2);
    CHECK_THROWS_WITH_AS(make_xpg_params(Rational(3, 2), Rational(3), 4, bad),
                         doctest::Contains("a2"), ConstraintViolation);

    XpgOverrides small_p;
    small_p.p = Rational(6);
    CHECK_THROWS_AS(make_xpg_params(Rational(1), Rational(2), 4, small_p), ConstraintViolation);

    XpgOverrides bad_g;
    bad_g.g = std::vector<Index>{1, 8, 82};
    CHECK_THROWS_AS(make_xpg_params(Rational(1), Rational(2), 3, bad_g), ConstraintViolation);

    // The default strategy is feasible across a grid of lambda pairs.
    for (const auto& [l1, l2] : std::vector<std::pair<Rational, Rational>>{
             {Rational(1), Rational(3, 2)}, {Rational(1), Rational(5)}, {Rational(3, 2), Rational(2)},
             {Rational(2), Rational(3)}, {Rational(5, 4), Rational(13, 10)}}) {
        const XpgParams q = make_xpg_params(l1, l2, 3);
        CHECK_NOTHROW(q.validate());
    }
}

TEST_CASE("xpg norm examples") {
    const XpgParams p = xpg_preset();
    CHECK(norm_xpg(SparseVector::indicator(IndexSet{5}), p) == 1);
    CHECK(norm_xpg(SparseVector::indicator(IndexSet::range(19, 21)), p) == 3);
    CHECK(norm_xpg(SparseVector::indicator(IndexSet::range(82, 84)), p) == 1);
    CHECK(norm_xpg(SparseVector{}, p) == 0);
    // Level 1 has no admissible slots; level 2 takes eight beyond 18.
    CHECK(norm_xpg(SparseVector::indicator(IndexSet::range(19, 40)), p) == 8);
    CHECK(norm_xpg(SparseVector::indicator(IndexSet::range(1, 18)), p) == 1);
    // 86 is the last excluded index at level 2, 87 contributes again.
    CHECK(norm_xpg(SparseVector::indicator(IndexSet{86, 87}), p) == 1);
    CHECK(norm_xpg(SparseVector::indicator(IndexSet{87, 88}), p) == 2);

    XpgParams short_g = p;
    short_g.g = {1, 9, 82};
    CHECK_THROWS_AS(norm_xpg(SparseVector::indicator(IndexSet{200}), short_g), InsufficientLevels);
    CHECK(norm_xpg(SparseVector::indicator(IndexSet{160}), short_g) == 1);
}

TEST_CASE("xw norm examples") {
    CHECK(norm_xw(SparseVector::indicator(IndexSet{2})) == 1.0);
    CHECK(norm_xw(SparseVector::indicator(IndexSet{2, 4, 8, 16})) ==
          doctest::Approx(1 + 1 / std::sqrt(2.0) + 1 / std::sqrt(3.0) + 0.5).epsilon(1e-15));
    CHECK(norm_xw(SparseVector::indicator(IndexSet{3, 5, 6, 7})) == doctest::Approx(25.0 / 12).epsilon(1e-15));
    CHECK(norm_xw(SparseVector{}) == 0.0);
    CHECK(xw_indicator_norm(4, 0) == doctest::Approx(2.784457050376).epsilon(1e-12));
    CHECK(in_dyadic_set(2));
    CHECK(in_dyadic_set(1024));
    CHECK_FALSE(in_dyadic_set(1));
    CHECK_FALSE(in_dyadic_set(12));
}

TEST_CASE("xiso norm examples") {
    const Rational l(3);
    CHECK(norm_xiso(parse_vector("1:-4/5,2:1"), l) == Rational(11, 15));
    CHECK(norm_xiso(parse_vector("1:-4/5"), l) == Rational(4, 5));
    CHECK(norm_xiso(parse_vector("1:1"), l) == 1);
    CHECK(norm_xiso(parse_vector("5:3,9:-3"), l) == 2);
    CHECK_THROWS_AS(SpaceSpec::xiso(Rational(1, 2)), DomainError);
}

TEST_CASE("xs norm examples") {
    CHECK(norm_xs(SparseVector::indicator(IndexSet::range(16, 19))) == 4);
    CHECK(norm_xs(SparseVector::indicator(IndexSet{1})) == 1);
    CHECK(norm_xs(SparseVector::indicator(IndexSet::range(1, 8))) == 2);
    CHECK(norm_xs(SparseVector::indicator(IndexSet::range(1, 128))) == 10);
    CHECK(norm_xs(SparseVector::indicator(IndexSet::range(4096, 4159))) == 64);
}

TEST_CASE("library oracle agrees on the worked examples") {
    const SpaceSpec xpg = SpaceSpec::xpg(xpg_preset());
    CHECK(norm_oracle(SparseVector::indicator(IndexSet::range(19, 21)), xpg) == Real(3L));
    CHECK(norm_oracle(SparseVector::indicator(IndexSet::range(82, 84)), xpg) == Real(1L));
    CHECK(norm_oracle(SparseVector::indicator(IndexSet::range(16, 19)), SpaceSpec::xs()) == Real(4L));
    CHECK(norm_oracle(SparseVector::indicator(IndexSet{2, 4, 8, 16}), SpaceSpec::xw()).to_double() ==
          doctest::Approx(2.784457050376).epsilon(1e-12));
    for (const SpaceSpec& s : {xpg, SpaceSpec::xw(), SpaceSpec::xiso(Rational(3)), SpaceSpec::xs()})
        CHECK(norm_oracle(SparseVector{}, s) == Real(0L));
    CHECK_THROWS_AS(norm_oracle(SparseVector::indicator(IndexSet::range(1, 13)), SpaceSpec::xs()), BudgetExceeded);
    CHECK_THROWS_AS(norm_oracle(SparseVector::indicator(IndexSet{10001}), SpaceSpec::xs()), BudgetExceeded);
}

TEST_CASE("structured norms match the test-side definitions") {
    const XpgParams preset = xpg_preset();
    const std::vector<SpaceSpec> specs{SpaceSpec::xpg(preset), SpaceSpec::xw(), SpaceSpec::xiso(Rational(3)),
                                       SpaceSpec::xiso(Rational(3, 2)), SpaceSpec::xs()};
    for (std::size_t s = 0; s < specs.size(); ++s) {
        VectorSampler sampler = default_sampler(specs[s]);
        sampler.max_support = std::min<std::size_t>(sampler.max_support, 7);
        for (std::uint64_t i = 0; i < 300; ++i) {
            auto rng = instance_rng(99, s * 1000 + i);
            const SparseVector x = sample_vector(rng, sampler);
            CAPTURE(to_string(x));
            const Real v = norm(x, specs[s]);
            struct V {
                const SparseVector& x;
                const Real& v;
                void operator()(const XpgSpace& sp) const {
                    auto o = oracle::xpg(x, sp.params);
                    REQUIRE(o.has_value());
                    CHECK(v == Real(*o));
                }
                void operator()(const XwSpace&) const {
                    CHECK(v.to_double() == doctest::Approx(oracle::xw(x)).epsilon(1e-12));
                }
                void operator()(const XisoSpace& sp) const { CHECK(v == Real(oracle::xiso(x, sp.lambda))); }
                void operator()(const XsSpace&) const { CHECK(v == Real(oracle::xs(x))); }
            };
            std::visit(V{x, v}, specs[s].kind());
        }
    }
}

TEST_CASE("norm axioms on samples") {
    const std::vector<SpaceSpec> specs{SpaceSpec::xpg(xpg_preset()), SpaceSpec::xw(), SpaceSpec::xiso(Rational(3)),
                                       SpaceSpec::xs()};
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const VectorSampler sampler = default_sampler(specs[s]);
        for (std::uint64_t i = 0; i < 200; ++i) {
            auto rng = instance_rng(5, s * 1000 + i);
            const SparseVector x = sample_vector(rng, sampler);
            const SparseVector y = sample_vector(rng, sampler);
            const Real nx = norm(x, specs[s]);
            CHECK(nx >= Real(specs[s].name() == "xiso" ? Rational(0) : sup_norm(x)));
            CHECK(approx_le(norm(x + y, specs[s]), nx + norm(y, specs[s]), 1e-12));
            const Rational c(-7, 3);
            if (specs[s].exact()) CHECK(norm(c * x, specs[s]) == Real(Rational(-c)) * nx);
            if (specs[s].one_unconditional()) {
                CHECK(approx_le(norm(sample_dominated(rng, x), specs[s]), nx, 1e-12));
            }
        }
    }
}

TEST_CASE("space config round trip") {
    for (const SpaceSpec& s : {SpaceSpec::xpg(xpg_preset()), SpaceSpec::xw(), SpaceSpec::xiso(Rational(5, 2)),
                               SpaceSpec::xs(), SpaceSpec::xpg(make_xpg_params(Rational(3, 2), Rational(3), 4))}) {
        std::map<std::string, std::string> section;
        for (const auto& [k, v] : to_config_section(s)) section[k] = v;
        CHECK(space_from_config(section) == s);
    }
    CHECK(space_from_config({{"kind", "xpg"}}) == SpaceSpec::xpg(xpg_preset()));
    CHECK(space_from_config({{"kind", "xiso"}}) == SpaceSpec::xiso(Rational(3)));
    CHECK_THROWS(space_from_config({{"kind", "bogus"}}));
    CHECK_THROWS(space_from_config({}));
    CHECK_THROWS_AS(space_from_config({{"kind", "xpg"}, {"a2", "1/5"}}), ConstraintViolation);
}

TEST_SUITE_END();
