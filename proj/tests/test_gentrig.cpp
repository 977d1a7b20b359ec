#include <cmath>

#include <doctest.h>

#include "pelastica/gentrig.hpp"
#include "pelastica/quadrature.hpp"

using namespace pelastica;

TEST_CASE("beta function against classical values") {
    // B(1/2, 1/2) = pi.
    CHECK(quad::beta(0.5, 0.5) == doctest::Approx(3.14159265358979324).epsilon(1e-12));
    // B(1, y) = 1/y.
    CHECK(quad::beta(1.0, 4.0) == doctest::Approx(0.25).epsilon(1e-12));
    // Symmetry.
    CHECK(quad::beta(0.25, 0.75) == doctest::Approx(quad::beta(0.75, 0.25)).epsilon(1e-12));
    // Recurrence B(x+1, y) = B(x, y) * x/(x+y).
    const double x = 0.7, y = 1.3;
    CHECK(quad::beta(x + 1.0, y) ==
          doctest::Approx(quad::beta(x, y) * x / (x + y)).epsilon(1e-12));
    CHECK_THROWS_AS(quad::beta(0.0, 1.0), std::domain_error);
}

TEST_CASE("half period pi_{2,4}: lemniscatic value and beta cross-check") {
    // Oracle frozen from the defining singular integral 2*int_0^1 (1-t^4)^{-1/2} dt.
    const double pi24 = gentrig::pi_gen(gentrig::Params(2.0, 4.0));
    CHECK(pi24 == doctest::Approx(2.6220575542921198).epsilon(1e-10));
    // Consistent closed form: pi_{q,r} = (2/r) B(1/r, 1/q').
    const double q = 2.0, r = 4.0;
    CHECK(pi24 ==
          doctest::Approx((2.0 / r) * quad::beta(1.0 / r, 1.0 - 1.0 / q)).epsilon(1e-11));
}

TEST_CASE("beta closed form for the half period across parameters") {
    for (double q : {1.5, 2.0, 3.0}) {
        for (double r : {2.0, 2.5, 4.0, 6.0}) {
            const gentrig::Params prm(q, r);
            const double expect = (2.0 / r) * quad::beta(1.0 / r, 1.0 - 1.0 / q);
            CHECK(gentrig::pi_gen(prm) == doctest::Approx(expect).epsilon(1e-11));
        }
    }
}

TEST_CASE("classical limit (q,r) = (2,2)") {
    const gentrig::Params prm(2.0, 2.0);
    CHECK(gentrig::pi_gen(prm) == doctest::Approx(3.14159265358979324).epsilon(1e-12));
    for (int i = 0; i <= 20; ++i) {
        const double x = -5.0 + 0.5 * i;
        CHECK(gentrig::sin_gen(prm, x) == doctest::Approx(std::sin(x)).epsilon(1e-11));
        CHECK(gentrig::cos_gen(prm, x) == doctest::Approx(std::cos(x)).epsilon(1e-10));
    }
}

TEST_CASE("asin/sin inversion, oddness, periodicity, monotonicity") {
    const gentrig::Params prm(2.0, 6.0);
    auto trig = gentrig::get(prm);
    const double hp = trig->half_pi();
    CHECK(trig->asin(0.0) == 0.0);
    CHECK(trig->asin(1.0) == doctest::Approx(hp).epsilon(1e-13));
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double x = hp * i / 50.0;
        const double s = trig->sin(x);
        CHECK(s >= prev - 1e-14);  // nondecreasing on [0, pi/2]
        prev = s;
        CHECK(trig->asin(s) == doctest::Approx(x).epsilon(1e-10));
        // Oddness and 2*pi periodicity of the extension.
        CHECK(trig->sin(-x) == doctest::Approx(-s).epsilon(1e-12));
        CHECK(trig->sin(x + 4.0 * hp) == doctest::Approx(s).epsilon(1e-10));
        // Reflection about the quarter period.
        CHECK(trig->sin(2.0 * hp - x) == doctest::Approx(s).epsilon(1e-10));
    }
}

TEST_CASE("pythagorean identity |cos|^q + |sin|^r = 1") {
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        const double r = 2.0 * p / (p - 1.0);
        const gentrig::Params prm(2.0, r);
        auto trig = gentrig::get(prm);
        const double period = 2.0 * trig->pi();
        for (int i = 0; i < 250; ++i) {
            const double x = -period + 2.0 * period * i / 249.0;
            const double s = std::abs(trig->sin(x));
            const double c = std::abs(trig->cos(x));
            CHECK(std::pow(c, prm.q) + std::pow(s, prm.r) ==
                  doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("cos is the derivative of sin") {
    const gentrig::Params prm(2.0, 3.0);
    auto trig = gentrig::get(prm);
    const double h = 1e-6;
    for (int i = 0; i <= 40; ++i) {
        const double x = -3.0 + 0.35 * i;
        const double fd = (trig->sin(x + h) - trig->sin(x - h)) / (2.0 * h);
        CHECK(trig->cos(x) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(gentrig::Params(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(gentrig::Params(2.0, 0.0), std::domain_error);
}
