#include "doctest.h"

#include "opergr/dual.hpp"
#include "opergr/errors.hpp"
#include "opergr/series.hpp"
#include "opergr/times_series.hpp"
#include "test_util.hpp"

using namespace opergr;
using namespace testutil;

TEST_CASE("rational arithmetic stays canonical")
{
    Rational a(6, -4);
    CHECK(a.str() == "-3/2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(binomial(-1, 3) == Rational(-1));
    CHECK(binomial(-2, 2) == Rational(3));
    CHECK(binomial(5, 2) == Rational(10));
}

TEST_CASE("series_mul examples")
{
    const int n = 12;
    Series a = poly({1, 1}, n);
    Series b = poly({1, -1}, n);
    CHECK((a * b).agrees(poly({1, 0, -1}, n)));
    Series one = Series::constant(1, n);
    CHECK((one * a).agrees(a));

    // Geometric series against a direct convolution oracle.
    std::vector<Rational> geo(n, Rational(1));
    Series g = poly(geo, n);
    Series prod = g * b;
    for (int k = 0; k < n; ++k) {
        Rational direct;
        for (int i = 0; i <= k; ++i) {
            direct += g.coeff(i) * b.coeff(k - i);
        }
        CHECK(prod.coeff(k) == direct);
    }
    CHECK(prod.agrees(one));
    CHECK(prod.order() == n);
}

TEST_CASE("product order is tracked, not widened")
{
    Series a = Series(0, {1, 2}, 6);
    Series b = Series(2, {1}, 9);
    Series c = a * b;
    CHECK(c.order() == std::min(6 + 2, 9 + 0));
    CHECK_THROWS_AS(c.coeff(8), TruncationExhausted);
}

TEST_CASE("pole floor is enforced")
{
    Series p = Series::monomial(1, -9, 12);
    CHECK_THROWS_AS(p * p, PoleOverflow);
}

TEST_CASE("series_derivative examples")
{
    CHECK(mono(1, 2, 12).derivative().agrees(mono(2, 1, 11)));
    Series d = mono(1, -2, 12).derivative();
    CHECK(d.agrees(mono(-2, -3, 11)));
    CHECK(d.order() == 11);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Series a = random_poly(rng, 6, 12, -2);
        Series b = random_poly(rng, 6, 12);
        Series lhs = (a * b).derivative();
        Series rhs = a.derivative() * b + a * b.derivative();
        CHECK(lhs.agrees(rhs));
    }
}

TEST_CASE("series_invert examples")
{
    const int n = 12;
    Series inv = poly({1, -1}, n).inverse();
    for (int k = 0; k < n; ++k) {
        CHECK(inv.coeff(k) == Rational(1));
    }
    Series u = poly({0, 1, 1}, n);
    Series ui = u.inverse();
    CHECK(ui.valuation() == -1);
    CHECK((u * ui).agrees(Series::constant(1, n)));
    CHECK_THROWS_AS(Series(n).inverse(), NotInvertible);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Series a = random_poly(rng, 8, n);
        if (a.coeff(0).is_zero()) {
            a += Series::constant(1, n);
        }
        Series prod = a * a.inverse();
        CHECK(prod.agrees(Series::constant(1, prod.order())));
        CHECK(prod.order() == n);
    }
}

TEST_CASE("ring axioms on random samples")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Series a = random_poly(rng, 7, 12, -1);
        Series b = random_poly(rng, 7, 12);
        Series c = random_poly(rng, 7, 10, -2);
        CHECK(((a * b) * c).agrees(a * (b * c)));
        CHECK((a * (b + c)).agrees(a * b + a * c));
    }
}

TEST_CASE("dual numbers never leak eps^2")
{
    Dual<Rational> x{Rational(2), Rational(3)};
    Dual<Rational> y{Rational(5), Rational(7)};
    Dual<Rational> p = x * y;
    CHECK(p.re == Rational(10));
    CHECK(p.eps == Rational(2 * 7 + 3 * 5));
    Dual<Rational> e{Rational(0), Rational(1)};
    Dual<Rational> ee = e * e;
    CHECK(ee.re.is_zero());
    CHECK(ee.eps.is_zero());
}

TEST_CASE("times series respect the weighted bound")
{
    const int d = 6;
    TimesSeries t1 = TimesSeries::variable(1, false, 4, d);
    TimesSeries t3 = TimesSeries::variable(3, false, 4, d);
    TimesSeries s = TimesSeries::constant(1, 4, d) + t1 + t3;
    TimesSeries p = s * s * s * s;
    for (const auto &[e, c] : p.terms()) {
        CHECK(p.weight(e) <= d);
        CHECK(!c.is_zero());
    }
    TimesSeries ex = (t1 * Rational(2)).exp();
    CHECK(ex.coeff({3, 0, 0, 0}) == Rational(8, 6));
    CHECK((ex * (t1 * Rational(-2)).exp()).agrees(TimesSeries::constant(1, 4, d)));
    CHECK(t1.derivative(1).bound() == d - 1);
}
