#include <cmath>

#include <doctest.h>

#include "pelastica/curves.hpp"
#include "pelastica/energy.hpp"
#include "pelastica/solver.hpp"

using namespace pelastica;

TEST_CASE("obstacle admissibility validation") {
    CHECK_NOTHROW(solver::Obstacle::symmetric_cone(0.4).validate());
    // Negative maximum violates the standing assumption.
    CHECK_THROWS_AS(solver::Obstacle::symmetric_cone(-0.5).validate(),
                    solver::AssumptionError);
    // Nonnegative endpoint values violate it too.
    CHECK_THROWS_AS(solver::Obstacle::symmetric_cone(0.4, 0.1).validate(),
                    solver::AssumptionError);
    const auto o = solver::Obstacle::symmetric_cone(0.4, -1.0);
    CHECK(o.eval(0.5) == doctest::Approx(0.4));
    CHECK(o.eval(0.0) == doctest::Approx(-1.0));
    CHECK(o.eval(0.25) == doctest::Approx(-0.3));
}

TEST_CASE("vi residual: zero at the free stationary point, positive on a clamp") {
    const double p = 2.0;
    const ShapeFunction& G = eu_p_shape(p);
    const int N = 128;
    const auto cone = solver::Obstacle::symmetric_cone(0.4);
    std::vector<double> psi_neg(static_cast<std::size_t>(N) + 1, -1.0);
    psi_neg.front() = -1.0;
    psi_neg.back() = -1.0;

    // u = 0 above a strictly negative obstacle is unconstrained-stationary.
    CHECK(solver::vi_residual(G, p, GridFunction::zeros(N), psi_neg) ==
          doctest::Approx(0.0));

    // The clamped positive part of the cone is far from stationary.
    const auto psiv = cone.sample(N);
    GridFunction clamp = GridFunction::zeros(N);
    for (int i = 1; i < N; ++i) clamp.u[i] = std::max(psiv[i], 0.0);
    CHECK(solver::vi_residual(G, p, clamp, psiv) > 0.1);

    // Infeasible input is rejected.
    GridFunction below = GridFunction::zeros(N);
    below.u[N / 2] = psiv[N / 2] - 0.1;
    CHECK_THROWS_AS(solver::vi_residual(G, p, below, psiv),
                    std::invalid_argument);
}

TEST_CASE("threshold verdict against the sharp constant") {
    const auto v1 =
        solver::threshold_verdict(2.0, solver::Obstacle::symmetric_cone(0.5));
    CHECK(v1.verdict == solver::Verdict::ExistsUnique);
    CHECK(v1.h_star == doctest::Approx(0.8346268).epsilon(1e-6));

    // Exactly at the threshold: no minimizer.
    const double hs = curves::h_star(2.0);
    const auto v2 =
        solver::threshold_verdict(2.0, solver::Obstacle::symmetric_cone(hs));
    CHECK(v2.verdict == solver::Verdict::NoMinimizer);

    const auto v3 =
        solver::threshold_verdict(3.0, solver::Obstacle::symmetric_cone(1.5));
    CHECK(v3.verdict == solver::Verdict::NoMinimizer);

    CHECK_THROWS_AS(
        solver::threshold_verdict(2.0, solver::Obstacle::cone(0.3, 0.4, -1, -1)),
        std::invalid_argument);
}

TEST_CASE("solver matches the semi-analytic cone minimizer") {
    const double p = 2.0, h = 0.4;
    const int N = 256;
    const ShapeFunction& G = eu_p_shape(p);
    solver::SolveOptions opts;
    opts.N = N;
    opts.symmetric = true;
    const auto rep =
        solver::minimize(G, p, solver::Obstacle::symmetric_cone(h), opts);
    CHECK(rep.converged);
    CHECK(rep.kkt_residual < opts.tol);
    CHECK(rep.verdict == "exists_unique");

    const auto exact = curves::exact_cone_minimizer(p, h, N);
    double gap = 0.0;
    for (int i = 0; i <= N; ++i) {
        gap = std::max(gap, std::abs(rep.minimizer.u[i] - exact.u.u[i]));
    }
    CHECK(gap < 5e-3);
    CHECK(rep.energy ==
          doctest::Approx(exact.energy).epsilon(1e-2));

    // Feasibility and the universal energy bound.
    const auto psiv = solver::Obstacle::symmetric_cone(h).sample(N);
    for (int i = 0; i <= N; ++i) CHECK(rep.minimizer.u[i] >= psiv[i] - 1e-14);
    CHECK(rep.energy < std::pow(G.c_p, p) + 1e-6);

    // Slope bound from the energy chain.
    double max_slope = 0.0;
    for (int i = 0; i < N; ++i) {
        max_slope = std::max(max_slope, std::abs(rep.minimizer.slope_mid(i)));
    }
    const double e_root = std::pow(rep.energy, 1.0 / p);
    if (e_root < 0.499 * G.c_p) {
        CHECK(max_slope <= G.inverse(e_root) + 1e-3);
    }
}

TEST_CASE("energy below the small-cone comparison bound") {
    // A cone below the threshold admits a minimizer with energy < c_p^p.
    const double p = 2.0;
    const ShapeFunction& G = eu_p_shape(p);
    const double h = 0.8 * curves::h_star(p);
    solver::SolveOptions opts;
    opts.N = 256;
    opts.symmetric = true;
    const auto rep =
        solver::minimize(G, p, solver::Obstacle::symmetric_cone(h), opts);
    CHECK(rep.converged);
    CHECK(rep.energy < std::pow(G.c_p, p));
}

TEST_CASE("coincidence set is the cone tip") {
    const double p = 2.0, h = 0.4;
    const int N = 128;
    const ShapeFunction& G = eu_p_shape(p);
    solver::SolveOptions opts;
    opts.N = N;
    opts.symmetric = true;
    const auto rep =
        solver::minimize(G, p, solver::Obstacle::symmetric_cone(h), opts);
    CHECK(rep.converged);
    REQUIRE(!rep.coincidence_nodes.empty());
    for (int i : rep.coincidence_nodes) {
        CHECK(std::abs(i - N / 2) <= 2);
    }
    // The multiplier is positive at the tip and zero elsewhere.
    double total = 0.0;
    for (std::size_t i = 0; i < rep.multipliers.size(); ++i) {
        CHECK(rep.multipliers[i] >= 0.0);
        total += rep.multipliers[i];
    }
    CHECK(total > 0.0);

    // Unconstrained stationary point carries no multiplier.
    std::vector<double> psi_neg(static_cast<std::size_t>(N) + 1, -1.0);
    const auto mu = solver::estimate_coincidence_measure(
        G, p, GridFunction::zeros(N), psi_neg);
    for (double v : mu) CHECK(v == 0.0);
}

TEST_CASE("monotone descent of the unsmoothed energy") {
    // Run the final unsmoothed stage only and confirm the energy at the
    // reported minimizer does not exceed the warm start's energy.
    const double p = 3.0, h = 0.3;
    const ShapeFunction& G = eu_p_shape(p);
    solver::SolveOptions opts;
    opts.N = 128;
    opts.symmetric = true;
    opts.eps_schedule = {0.0};
    const auto rep =
        solver::minimize(G, p, solver::Obstacle::symmetric_cone(h), opts);
    // Warm start energy:
    GridFunction u0 = GridFunction::zeros(opts.N);
    const auto psiv = solver::Obstacle::symmetric_cone(h).sample(opts.N);
    double t = 0.0;
    for (int i = 1; i < opts.N; ++i) {
        const double v = curves::profile_U0(G, u0.x(i));
        if (psiv[i] > 0.0 && v > 0.0) t = std::max(t, psiv[i] / v);
    }
    for (int i = 1; i < opts.N; ++i) {
        u0.u[i] = std::max(t * curves::profile_U0(G, u0.x(i)), psiv[i]);
    }
    CHECK(rep.energy <= energy::energy_discrete(G, p, u0) + 1e-12);
}

TEST_CASE("existence bound check") {
    const double p = 2.0;
    const ShapeFunction& G = eu_p_shape(p);
    const auto cone = solver::Obstacle::symmetric_cone(0.1);
    const double c = 0.4 * G.c_p;
    const auto chk = solver::existence_bound_check(G, p, cone, std::pow(c, p));
    CHECK(chk.small_energy);
    CHECK(chk.dominated_by_uc);
    CHECK(chk.bound == doctest::Approx(std::pow(0.5 * G.c_p, p)));
    CHECK(chk.bound_sym == doctest::Approx(std::pow(G.c_p, p)));

    // Strict inequality fails at the bound itself.
    const auto fail = solver::existence_bound_check(
        G, p, cone, std::pow(0.5 * G.c_p, p));
    CHECK(!fail.small_energy);
}

TEST_CASE("nonexistence kernel H(A)") {
    for (double p : {2.0, 3.0}) {
        const ShapeFunction& G = eu_p_shape(p);
        // H(A) <= A and H is small for small A.
        double prev = 0.0;
        for (double A : {1e-3, 1e-2, 1e-1, 1.0}) {
            const double H = solver::nonexistence_H(G, p, A);
            CHECK(H >= 0.0);
            CHECK(H <= A);
            CHECK(H >= prev);
            prev = H;
        }
        // Large-A limit: twice the sharp threshold.
        CHECK(solver::nonexistence_H(G, p, 1e4) ==
              doctest::Approx(2.0 * curves::h_star(p)).epsilon(1e-2));
        // The sup bound is attained by the limit; half of it bounds heights.
        const double b = solver::nonexistence_bound(G, p);
        CHECK(b == doctest::Approx(curves::h_star(p)).epsilon(1e-2));
        CHECK(b < 1.2 * curves::h_star(p));
    }
}
