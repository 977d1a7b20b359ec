#include "pelastica/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pelastica/energy.hpp"

namespace pelastica::rearrange {

std::vector<double> sym_decreasing_rearrangement(const std::vector<double>& f) {
    const int n = static_cast<int>(f.size());
    if (n == 0) return {};

    double amax = 0.0;
    for (double v : f) amax = std::max(amax, std::abs(v));
    const double tol = 1e-14 * amax;
    bool has_pos = false, has_neg = false;
    for (double v : f) {
        if (v > tol) has_pos = true;
        if (v < -tol) has_neg = true;
    }
    if (has_pos && has_neg) {
        throw std::invalid_argument(
            "sym_decreasing_rearrangement: mixed-sign input; the construction "
            "is defined for one-signed data (concave or convex profiles)");
    }
    const double sign = has_neg ? -1.0 : 1.0;

    std::vector<double> mags(f.size());
    for (int i = 0; i < n; ++i) mags[i] = std::abs(f[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());

    // Positions ordered by distance from the center cell, left first on ties.
    std::vector<int> order(f.size());
    std::iota(order.begin(), order.end(), 0);
    const double c = 0.5 * (n - 1);
    std::stable_sort(order.begin(), order.end(), [c](int a, int b) {
        const double da = std::abs(a - c), db = std::abs(b - c);
        if (da != db) return da < db;
        return a < b;
    });

    std::vector<double> out(f.size());
    for (int k = 0; k < n; ++k) out[order[k]] = sign * mags[k];
    return out;
}

GridFunction reconstruct_v(const ShapeFunction& G,
                           const std::vector<double>& f_star) {
    const int n = static_cast<int>(f_star.size());
    if (n < 1) throw std::invalid_argument("reconstruct_v: empty data");
    const int N = n + 1;
    const double h = 1.0 / N;

    // Midpoint cumulative integral F_{j+1/2} = h * sum_{k<=j} f_k.
    std::vector<double> F(static_cast<std::size_t>(N), 0.0);
    for (int j = 1; j < N; ++j) F[j] = F[j - 1] + h * f_star[j - 1];
    const auto [fmin_it, fmax_it] = std::minmax_element(F.begin(), F.end());
    if (*fmax_it - *fmin_it >= G.c_p) {
        throw std::runtime_error(
            "reconstruct_v: cumulative data exceed the range of G (slope "
            "blow-up; the smallness condition on f fails)");
    }

    double lo = -0.5 * G.c_p - *fmin_it;
    double hi = 0.5 * G.c_p - *fmax_it;
    const double pad = 1e-13 * (hi - lo);
    lo += pad;
    hi -= pad;
    auto mean_slope = [&](double c0) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) s += G.inverse(F[j] + c0);
        return s;
    };
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * G.c_p; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mean_slope(mid) < 0.0) lo = mid; else hi = mid;
    }
    const double c0 = 0.5 * (lo + hi);

    std::vector<double> v(static_cast<std::size_t>(N) + 1, 0.0);
    for (int j = 0; j < N; ++j) v[j + 1] = v[j] + h * G.inverse(F[j] + c0);
    return GridFunction(N, std::move(v));
}

bool convexity_condition(const ShapeFunction& G, double C0) {
    if (!(C0 > 0.0)) throw std::domain_error("convexity_condition: C0 must be > 0");
    constexpr int kSamples = 4096;
    for (int i = 0; i <= kSamples; ++i) {
        const double z = C0 * i / kSamples;
        if (!(2.0 * G.Gdot(z) + z * G.Gddot(z) > 0.0)) return false;
    }
    return true;
}

RearrangementResult rearrange_minimizer(const ShapeFunction& G, double p,
                                        const GridFunction& u) {
    const int N = u.N;
    std::vector<double> f(static_cast<std::size_t>(N) - 1);
    for (int i = 1; i < N; ++i) {
        f[i - 1] = energy::g_second_quotient(G, u, i);
    }
    RearrangementResult res;
    res.f_star = sym_decreasing_rearrangement(f);
    res.v = reconstruct_v(G, res.f_star);
    res.energy_residual = std::abs(energy::energy_discrete(G, p, res.v) -
                                   energy::energy_discrete(G, p, u));
    res.symmetric = true;
    for (int i = 0; i <= N / 2; ++i) {
        if (std::abs(res.v.u[i] - res.v.u[N - i]) > 1e-10) {
            res.symmetric = false;
            break;
        }
    }
    return res;
}

}  // namespace pelastica::rearrange
