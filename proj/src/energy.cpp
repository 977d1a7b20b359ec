#include "pelastica/energy.hpp"

#include <cmath>

namespace pelastica::energy {

double eu_p(double p, double z) { return eu_p_shape(p).G(z); }

double eu_p_inverse(double p, double y) { return eu_p_shape(p).inverse(y); }

double phi_pow(double z, double p, double eps) {
    if (eps == 0.0) return std::pow(std::abs(z), p);
    return std::pow(z * z + eps * eps, 0.5 * p) - std::pow(eps, p);
}

double phi_pow_d1(double z, double p, double eps) {
    if (eps == 0.0) {
        if (z == 0.0) return 0.0;
        return p * std::pow(std::abs(z), p - 1.0) * (z > 0.0 ? 1.0 : -1.0);
    }
    return p * z * std::pow(z * z + eps * eps, 0.5 * p - 1.0);
}

double phi_pow_d2(double z, double p, double eps) {
    const double t = z * z + eps * eps;
    return p * std::pow(t, 0.5 * p - 2.0) * (t + (p - 2.0) * z * z);
}

double g_second_quotient(const ShapeFunction& G, const GridFunction& u, int i) {
    return (G.G(u.slope_mid(i)) - G.G(u.slope_mid(i - 1))) * u.N;
}

double energy_discrete(const ShapeFunction& G, double p, const GridFunction& u,
                       double eps) {
    const double h = u.h();
    // Cache G at midpoints; each enters two interior nodes.
    double e = 0.0;
    double g_prev = G.G(u.slope_mid(0));
    for (int i = 1; i < u.N; ++i) {
        const double g_next = G.G(u.slope_mid(i));
        e += phi_pow((g_next - g_prev) / h, p, eps);
        g_prev = g_next;
    }
    return e * h;
}

double energy_curvature_form(double p, const GridFunction& u) {
    const double h = u.h();
    double e = 0.0;
    for (int i = 1; i < u.N; ++i) {
        const double d1 = u.d1(i);
        const double kappa = u.d2(i) / std::pow(1.0 + d1 * d1, 1.5);
        e += std::pow(std::abs(kappa), p) * std::sqrt(1.0 + d1 * d1);
    }
    return e * h;
}

std::vector<double> gradient_discrete(const ShapeFunction& G, double p,
                                      const GridFunction& u, double eps) {
    const int N = u.N;
    const double h = u.h();
    std::vector<double> grad(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> gmid(static_cast<std::size_t>(N));
    std::vector<double> gdot(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const double d = u.slope_mid(i);
        gmid[i] = G.G(d);
        gdot[i] = G.Gdot(d);
    }
    // E = h * sum_i phi(z_i), z_i = (gmid_i - gmid_{i-1})/h, i = 1..N-1.
    // dz_i/du_{i+1} = gdot_i/h^2, dz_i/du_i = -(gdot_i + gdot_{i-1})/h^2,
    // dz_i/du_{i-1} = gdot_{i-1}/h^2.
    const double inv_h = 1.0 / h;
    for (int i = 1; i < N; ++i) {
        const double z = (gmid[i] - gmid[i - 1]) * inv_h;
        const double w = phi_pow_d1(z, p, eps) * inv_h;  // h * dphi * (1/h^2)
        grad[i + 1] += w * gdot[i];
        grad[i] -= w * (gdot[i] + gdot[i - 1]);
        grad[i - 1] += w * gdot[i - 1];
    }
    grad[0] = 0.0;
    grad[N] = 0.0;
    return grad;
}

std::vector<double> euler_substitution(const ShapeFunction& G, double p,
                                       const GridFunction& u) {
    const int N = u.N;
    std::vector<double> w(static_cast<std::size_t>(N) + 1, 0.0);
    for (int i = 1; i < N; ++i) {
        const double gd = G.Gdot(u.d1(i));
        const double upp = u.d2(i);
        if (upp == 0.0) continue;
        w[i] = -p * std::pow(gd, p - 1.0) * std::pow(std::abs(upp), p - 1.0) *
               (upp > 0.0 ? 1.0 : -1.0);
    }
    return w;
}

}  // namespace pelastica::energy
