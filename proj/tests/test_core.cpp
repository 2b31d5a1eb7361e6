#include <doctest.h>

#include "greedysum/core.hpp"
#include "greedysum/errors.hpp"
#include "greedysum/rational.hpp"
#include "greedysum/real.hpp"

using namespace greedysum;

TEST_SUITE_BEGIN("core");

TEST_CASE("rational literals") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4/5") == Rational(-4, 5));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1.05") == Rational(21, 20));
    CHECK(parse_rational("08") == 8);
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(floor_of(Rational(-1, 2)) == -1);
    CHECK(ceil_of(Rational(7, 2)) == 4);
    CHECK(floor_u64(Rational(82 * 9, 4)) == 184);
}

TEST_CASE("simplest rational strictly inside an interval") {
    CHECK(simplest_between(Rational(3, 4), Rational(1)) == Rational(4, 5));
    CHECK(simplest_between(Rational(0), Rational(1)) == Rational(1, 2));
    CHECK(simplest_between(Rational(1, 3), Rational(1, 2)) == Rational(2, 5));
    CHECK(simplest_between(Rational(5, 2), Rational(4)) == Rational(3));
    CHECK(simplest_between(Rational(-1, 2), Rational(1, 2)) == Rational(0));
    for (int d = 2; d < 30; ++d)
        for (int n = 1; n < d; ++n) {
            Rational lo(n, d);
            Rational hi(n + 1, d);
            lo.canonicalize();
            hi.canonicalize();
            const Rational s = simplest_between(lo, hi);
            CHECK(lo < s);
            CHECK(s < hi);
            // No smaller denominator fits.
            for (unsigned long q = 1; q < s.get_den().get_ui(); ++q) {
                const Rational scaled = lo * q;
                mpz_class p;
                mpz_fdiv_q(p.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
                p += 1;
                Rational candidate(p, q);
                candidate.canonicalize();
                CHECK_FALSE(candidate < hi);
            }
        }
    CHECK_THROWS(simplest_between(Rational(1), Rational(1)));
}

TEST_CASE("real arithmetic and ratios") {
    CHECK(ratio(Real(0L), Real(0L)) == Real(0L));
    CHECK(ratio(Real(1L), Real(0L)).is_infinite());
    CHECK(ratio(Real(Rational(4, 5)), Real(Rational(11, 15))) == Real(Rational(12, 11)));
    CHECK(ratio(Real(Rational(4, 5)), Real(Rational(11, 15))).is_exact());
    CHECK_FALSE(ratio(Real::approx(1.0), Real(2L)).is_exact());
    CHECK(Real::approx(0.5) == Real(Rational(1, 2)));
    CHECK(Real(Rational(1, 3)) < Real::approx(0.34));
    CHECK(approx_le(Real::approx(1.0 + 1e-12), Real(1L)));
    CHECK_FALSE(approx_le(Real(parse_rational("1000000000001/1000000000000")), Real(1L)));
    CHECK(to_string(Real(Rational(5, 2))) == "5/2");
    CHECK(to_string(Real::infinity()) == "inf");
    CHECK_THROWS(Real(1L) / Real(0L));
    CHECK(relative_difference(Real(2L), Real(1L)) == doctest::Approx(0.5));
}

TEST_CASE("index sets") {
    const IndexSet a = parse_index_set("1,3,16..19");
    CHECK(a.size() == 6);
    CHECK(a.min() == 1);
    CHECK(a.max() == 19);
    CHECK(a.contains(17));
    CHECK_FALSE(a.contains(2));
    CHECK(to_string(a) == "{1,3,16..19}");
    CHECK(parse_index_set("{5,4,4}") == IndexSet{4, 5});
    CHECK(parse_index_set("") == IndexSet{});
    CHECK(parse_index_set("{}") == IndexSet{});
    CHECK(to_string(IndexSet::range(82, 84)) == "{82..84}");
    CHECK(to_string(IndexSet{19, 20}) == "{19,20}");
    CHECK_THROWS_AS(parse_index_set("0,1"), DomainError);
    CHECK_THROWS_AS(parse_index_set("5..3"), std::invalid_argument);
    CHECK_THROWS_AS(IndexSet{}.min(), DomainError);

    const IndexSet b{2, 3, 4};
    CHECK(a.unite(b) == parse_index_set("1..4,16..19"));
    CHECK(a.intersect(b) == IndexSet{3});
    CHECK(a.minus(b) == parse_index_set("1,16..19"));
    CHECK(IndexSet{3}.is_subset_of(a));
    CHECK_FALSE(b.is_subset_of(a));
}

TEST_CASE("spread and surrounds") {
    CHECK(spread(IndexSet{}) == 0);
    CHECK(spread(IndexSet{7}) == 1);
    CHECK(spread(IndexSet{3, 9}) == 7);
    CHECK(surrounds(IndexSet{1, 2, 10}, IndexSet{3, 9}));
    CHECK_FALSE(surrounds(IndexSet{5}, IndexSet{3, 9}));
    CHECK(surrounds(IndexSet{3}, IndexSet{}));
    CHECK_FALSE(surrounds(IndexSet{1, 2}, IndexSet{1}));
    CHECK(surrounds(IndexSet{}, IndexSet{1, 2}));
}

TEST_CASE("intervals") {
    const Interval i(3, 6);
    CHECK(i.size() == 4);
    CHECK(i.contains(3));
    CHECK_FALSE(i.contains(7));
    CHECK(i.to_index_set() == IndexSet::range(3, 6));
    CHECK(Interval().empty());
    CHECK(Interval().size() == 0);
    CHECK_THROWS_AS(Interval(0, 2), DomainError);
    CHECK_THROWS_AS(Interval(4, 2), DomainError);
}

TEST_CASE("sparse vectors") {
    const SparseVector x = parse_vector("3:1/2, 1:-2, 7:0");
    CHECK(x.support() == IndexSet{1, 3});
    CHECK(x.coefficient(1) == Rational(-2));
    CHECK(x.coefficient(2) == 0);
    CHECK(x.max_index() == 3);
    CHECK(to_string(x) == "1:-2,3:1/2");
    CHECK(parse_vector(to_string(x)) == x);
    CHECK(parse_vector("").is_zero());
    CHECK(parse_vector("2:1,2:-1").is_zero());
    CHECK_THROWS_AS(parse_vector("0:1"), DomainError);
    CHECK_THROWS_AS(parse_vector("1=2"), std::invalid_argument);

    const SparseVector y{{3, Rational(-1, 2)}, {4, Rational(1)}};
    CHECK(x + y == SparseVector{{1, Rational(-2)}, {4, Rational(1)}});
    CHECK(x - x == SparseVector{});
    CHECK(Rational(-2) * x == SparseVector{{1, Rational(4)}, {3, Rational(-1)}});
    CHECK(sup_norm(x) == 2);
    CHECK(project(x, IndexSet{3, 9}) == SparseVector{{3, Rational(1, 2)}});

    const std::vector<Rational> dense{Rational(0), Rational(5), Rational(0)};
    CHECK(SparseVector::from_dense(dense) == SparseVector{{2, Rational(5)}});
    CHECK(SparseVector::indicator(IndexSet{2, 5}).moduli() == std::vector<Rational>{Rational(1), Rational(1)});
}

TEST_CASE("signs") {
    const SignPattern s = parse_signs("2:-1,5:+1");
    CHECK(s.at(2) == -1);
    CHECK(s.at(5) == 1);
    CHECK(s.at(9) == 1);
    CHECK(to_string(s) == "2:-1,5:1");
    CHECK(SparseVector::signed_indicator(IndexSet{2, 3}, s) == parse_vector("2:-1,3:1"));
    CHECK_THROWS_AS(parse_signs("2:3"), DomainError);
    CHECK(parse_signs("").entries().empty());
}

TEST_SUITE_END();
