#include <doctest.h>

#include "oracles.hpp"

#include "greedysum/errors.hpp"
#include "greedysum/experiments.hpp"

#include <json.hpp>

#include <cmath>

using namespace greedysum;

namespace {

const std::vector<std::string>& row_for(const ExperimentResult& r, std::size_t col, const std::string& key,
                                        std::size_t skip = 0) {
    for (const auto& row : r.rows)
        if (row.at(col) == key && skip-- == 0) return row;
    FAIL("no row " << key);
    static std::vector<std::string> none;
    return none;
}

}  // namespace

TEST_SUITE_BEGIN("experiments");

TEST_CASE("pg witness sets") {
    const XpgParams p = xpg_preset();
    CHECK(pg_witness_sets(p, 2, p.lambda1) == std::make_pair(IndexSet{19, 20}, IndexSet::range(82, 84)));
    CHECK(pg_witness_sets(p, 3, p.lambda1) == std::make_pair(IndexSet::range(165, 184), IndexSet::range(821, 841)));
    const auto [a2, b2] = pg_witness_sets(p, 2, p.lambda2);
    CHECK(a2 == IndexSet{19, 20});
    CHECK(b2 == IndexSet::range(82, 104));
    CHECK_THROWS_AS(pg_witness_sets(p, 5, p.lambda1), InsufficientLevels);
    CHECK_THROWS_AS(pg_witness_sets(p, 1, p.lambda1), DomainError);
    CHECK(max_conservative_bound(p) == 8);
}

TEST_CASE("pg separation on the preset") {
    const XpgParams p = xpg_preset();
    const auto r = run_pg_separation(p, 2, 4, 10);
    CHECK(r.pass());
    // columns: j, lambda, A, B, norm_A, norm_B, ratio
    const auto& j2 = row_for(r, 0, "2");
    CHECK(j2[4] == "2");
    CHECK(j2[5] == "1");
    CHECK(row_for(r, 0, "3")[4] == "20");
    CHECK(row_for(r, 0, "3")[5] == "8");
    CHECK(row_for(r, 0, "3")[6] == "5/2");
    CHECK(row_for(r, 0, "4")[4] == "205");
    CHECK(row_for(r, 0, "4")[5] == "81");

    // Independent evaluation of the level-2 pair.
    const auto [a, b] = pg_witness_sets(p, 2, p.lambda1);
    CHECK(oracle::xpg(SparseVector::indicator(a), p).value() == 2);
    CHECK(oracle::xpg(SparseVector::indicator(b), p).value() == 1);

    CHECK_THROWS_AS(run_pg_separation(p, 2, 5), InsufficientLevels);
    CHECK_THROWS_AS(run_pg_separation(p, 1, 3), DomainError);
}

TEST_CASE("pg separation with six levels reaches j = 5") {
    const XpgParams p = xpg_preset(6);
    const auto r = run_pg_separation(p, 4, 5, 0);
    CHECK(r.pass());
    const auto& j5 = row_for(r, 0, "5");
    // ||1_A|| >= floor(a3 g_5) and ||1_B|| <= g_4.
    CHECK(parse_rational(j5[4]) >= floor_u64(p.a3 * p.level(5)));
    CHECK(parse_rational(j5[5]) <= p.level(4));
}

TEST_CASE("xw divergence") {
    const std::vector<std::size_t> ns{4, 12, 100, 10000};
    const auto r = run_xw_divergence(ns);
    CHECK(r.pass());
    // Independent partial sums.
    for (std::size_t k = 0; k < ns.size(); ++k) {
        double a = 0;
        double b = 0;
        for (std::size_t n = 1; n <= ns[k]; ++n) {
            a += 1 / std::sqrt(static_cast<double>(n));
            b += 1 / static_cast<double>(n);
        }
        CHECK(std::stod(r.rows[k][3]) == doctest::Approx(a / b).epsilon(1e-11));
    }
    CHECK(r.rows[0][4] == r.rows[0][1]);
    CHECK(r.rows[2][4].empty());
    CHECK(run_xw_divergence(ns).to_csv() == r.to_csv());
    // A repeated N is not a strict increase.
    const std::vector<std::size_t> flat{4, 4};
    CHECK_FALSE(run_xw_divergence(flat).pass());
}

TEST_CASE("iso threshold") {
    const std::vector<Rational> lambdas{Rational(3, 2), Rational(2), Rational(3)};
    const auto r = run_iso_threshold(lambdas, 500, 1);
    CHECK(r.pass());
    CHECK(r.rows[0][1] == "empty");
    CHECK(r.rows[1][1] == "empty");
    const auto& row = r.rows[2];
    CHECK(row[2] == "4/5");
    CHECK(row[3] == "11/15");
    CHECK(row[4] == "4/5");
    CHECK(row[5] == "12/11");
    CHECK(parse_rational(row[7]) <= 1);
    CHECK(run_iso_threshold(lambdas, 500, 1).to_csv() == r.to_csv());
    CHECK_THROWS_AS(run_iso_threshold(lambdas, 0, 1), DomainError);
}

TEST_CASE("xs hierarchy") {
    const std::vector<std::size_t> ns{1, 4, 16, 64};
    const auto r = run_xs_hierarchy(ns, 100, 3);
    CHECK(r.pass());
    CHECK(r.rows[0][7] == "fails: B surrounds A");
    CHECK(r.rows[1][3] == "4");
    CHECK(r.rows[1][4] == "2");
    CHECK(r.rows[3][3] == "64");
    CHECK(r.rows[3][4] == "10");
    CHECK(r.rows[3][5] == "5/32");
    // Independent check of ||1_{1..2N}|| at N = 4.
    CHECK(oracle::xs(SparseVector::indicator(IndexSet::range(1, 8))) == 2);
}

TEST_CASE("hierarchy ordering and oracle fuzz") {
    for (const SpaceSpec& spec : {SpaceSpec::xs(), SpaceSpec::xw(), SpaceSpec::xiso(Rational(3))}) {
        const auto r = run_hierarchy_ordering(spec, 200, 8);
        CHECK(r.pass());
        CHECK(r.rows.size() == 4);
        CHECK(run_hierarchy_ordering(spec, 200, 8).to_csv() == r.to_csv());
    }
    const std::vector<SpaceSpec> specs{SpaceSpec::xpg(xpg_preset()), SpaceSpec::xw(), SpaceSpec::xiso(Rational(3)),
                                       SpaceSpec::xs()};
    const auto fuzz = run_oracle_fuzz(specs, 200, 2);
    CHECK(fuzz.pass());
    for (const auto& row : fuzz.rows) CHECK(row[2] == "0");
}

TEST_CASE("experiment result verdicts and output") {
    ExperimentResult r;
    r.name = "demo";
    r.seed = 4;
    r.columns = {"n", "violation"};
    r.rows = {{"1", ""}, {"2, 3", "bad"}};
    CHECK_FALSE(r.pass());
    CHECK(r.violation_count() == 1);
    CHECK(r.to_csv() == "n,violation\n1,\n\"2, 3\",bad\n");
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["verdict"] == "fail");
    CHECK(j["violations"].size() == 1);
    CHECK(j["violations"][0]["n"] == "2, 3");
}

TEST_SUITE_END();
