#include <cmath>

#include <doctest.h>

#include "pelastica/curves.hpp"
#include "pelastica/diagnostics.hpp"
#include "pelastica/shape.hpp"

using namespace pelastica;

namespace {

GridFunction from_fn(int N, double (*f)(double)) {
    std::vector<double> u(static_cast<std::size_t>(N) + 1, 0.0);
    for (int i = 1; i < N; ++i) u[i] = f(static_cast<double>(i) / N);
    return GridFunction(N, std::move(u));
}

double parabola(double x) { return x * (1.0 - x); }
double wiggle(double x) { return 0.1 * std::sin(2.0 * std::acos(-1.0) * x); }
double tent(double x) { return 0.5 - std::abs(x - 0.5); }

}  // namespace

TEST_CASE("concavity check") {
    CHECK(diagnostics::check_concavity(from_fn(128, parabola)).concave);
    CHECK(!diagnostics::check_concavity(from_fn(128, wiggle)).concave);
    const auto cm = curves::exact_cone_minimizer(2.0, 0.4, 256);
    CHECK(diagnostics::check_concavity(cm.u).concave);
}

TEST_CASE("nondegeneracy check") {
    const auto cm = curves::exact_cone_minimizer(2.0, 0.4, 256);
    const auto v = diagnostics::check_nondegeneracy(cm.u);
    CHECK(v.nondegenerate);
    CHECK(v.min_neg_second > 0.0);

    // A tent has flat cores on both legs.
    const auto t = diagnostics::check_nondegeneracy(from_fn(128, tent));
    CHECK(!t.nondegenerate);
    CHECK(t.has_flat_core);

    // The zero function is degenerate everywhere.
    CHECK(!diagnostics::check_nondegeneracy(GridFunction::zeros(128)).nondegenerate);
}

TEST_CASE("natural boundary conditions") {
    const double p = 2.0;
    const ShapeFunction& G = eu_p_shape(p);
    const auto cm = curves::exact_cone_minimizer(p, 0.4, 1024);
    const auto r = diagnostics::check_natural_bc(G, p, cm.u);
    CHECK(std::abs(r.upp0) < 1e-2);
    CHECK(std::abs(r.upp1) < 1e-2);
    CHECK(std::abs(r.w0) < 1e-2);
    CHECK(std::abs(r.w1) < 1e-2);

    // A parabola has u''(0) = -2.
    const auto rp = diagnostics::check_natural_bc(G, p, from_fn(256, parabola));
    CHECK(rp.upp0 == doctest::Approx(-2.0).epsilon(1e-6));

    const auto rz = diagnostics::check_natural_bc(G, p, GridFunction::zeros(64));
    CHECK(rz.upp0 == 0.0);
    CHECK(rz.w0 == 0.0);
}

TEST_CASE("slope function has two plateaus for the cone minimizer") {
    const double p = 2.0;
    const ShapeFunction& G = eu_p_shape(p);
    const auto cm = curves::exact_cone_minimizer(p, 0.4, 512);
    const auto s = diagnostics::slope_function_m(G, p, cm.u);
    CHECK(s.nonincreasing);
    CHECK(s.two_plateau);
    CHECK(std::abs(s.jump_node - 256) <= 2);
    // Antisymmetric plateau values for the symmetric cone.
    CHECK(s.plateau_left > 0.0);
    CHECK(s.plateau_right < 0.0);
    CHECK(s.plateau_left ==
          doctest::Approx(-s.plateau_right).epsilon(1e-2));

    // m vanishes identically for the zero function.
    const auto sz = diagnostics::slope_function_m(G, p, GridFunction::zeros(128));
    for (double v : sz.m) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("boundary exponent fit on the exact curves") {
    // p = 3: |u'''| ~ x^{-1/2} near the contact-free boundary.
    const auto c3 = curves::exact_cone_minimizer(3.0, 0.3, 4096);
    const auto f3 =
        diagnostics::boundary_exponent_fit(eu_p_shape(3.0), 3.0, c3.u);
    CHECK(f3.expected == doctest::Approx(-0.5));
    CHECK(f3.fitted == doctest::Approx(-0.5).epsilon(0.2));
    CHECK(f3.w_pinched);

    // p = 2: u''' stays bounded, the fitted slope is near zero.
    const auto c2 = curves::exact_cone_minimizer(2.0, 0.4, 4096);
    const auto f2 =
        diagnostics::boundary_exponent_fit(eu_p_shape(2.0), 2.0, c2.u);
    CHECK(std::abs(f2.fitted) < 0.3);
}

TEST_CASE("report serializes to JSON") {
    const double p = 2.0;
    const ShapeFunction& G = eu_p_shape(p);
    const auto cm = curves::exact_cone_minimizer(p, 0.4, 256);
    std::vector<double> psi(cm.u.u.size(), -1.0);
    const auto rep = diagnostics::run_all(G, p, cm.u, psi);
    const std::string j = diagnostics::to_json(rep);
    CHECK(j.find("concavity") != std::string::npos);
    CHECK(j.find("boundary_exponent") != std::string::npos);
}
