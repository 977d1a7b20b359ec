#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace pelastica::quad {

// 15-point Gauss-Legendre nodes/weights on [-1,1].
struct GaussLegendre15 {
    static constexpr std::size_t n = 15;
    static constexpr std::array<double, 15> nodes = {
        -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
        -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
        -0.2011940939974345, 0.0,                 0.2011940939974345,
        0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
        0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
    static constexpr std::array<double, 15> weights = {
        0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
        0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
        0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
        0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
        0.1071592204671719, 0.0703660474881081, 0.0307532419961173};
};

// 7-point Gauss-Legendre, used for short panels where 15 points is overkill.
struct GaussLegendre7 {
    static constexpr std::size_t n = 7;
    static constexpr std::array<double, 7> nodes = {
        -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
        0.0,                 0.4058451513773972,  0.7415311855993945,
        0.9491079123427585};
    static constexpr std::array<double, 7> weights = {
        0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
        0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
        0.1294849661688697};
};

template <class Rule, class F>
double fixed_gauss(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < Rule::n; ++i) {
        s += Rule::weights[i] * f(c + hw * Rule::nodes[i]);
    }
    return s * hw;
}

namespace detail {
template <class F>
double adaptive_impl(F& f, double a, double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = fixed_gauss<GaussLegendre15>(f, a, m);
    const double right = fixed_gauss<GaussLegendre15>(f, m, b);
    const double err = std::abs(left + right - whole);
    if (err < tol || depth >= 48) {
        return left + right;
    }
    return adaptive_impl(f, a, m, left, 0.5 * tol, depth + 1) +
           adaptive_impl(f, m, b, right, 0.5 * tol, depth + 1);
}
}  // namespace detail

// Adaptive bisection driven by a GL15 self-comparison error estimate.
// Integrand must be finite on [a,b]; endpoint singularities have to be
// removed by substitution before calling this.
template <class F>
double adaptive(F&& f, double a, double b, double tol = 1e-13) {
    if (a == b) return 0.0;
    const double whole = fixed_gauss<GaussLegendre15>(f, a, b);
    return detail::adaptive_impl(f, a, b, whole,
                                 tol * std::max(1.0, std::abs(whole)), 0);
}

// Euler beta function as the integral int_0^1 t^{x-1}(1-t)^{y-1} dt.
// Endpoint singularities (x<1 or y<1) are removed by u = t^x / u = t^y.
double beta(double x, double y);

}  // namespace pelastica::quad
