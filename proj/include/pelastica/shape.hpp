#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pelastica {

/// Odd, strictly increasing profile G with bounded range, together with its
/// derivatives and the range constant c_p(G) = 2 sup G.
struct ShapeFunction {
    std::string name;
    std::function<double(double)> G;
    std::function<double(double)> Gdot;
    std::function<double(double)> Gddot;
    double c_p = 0.0;
    bool is_eu_p = false;
    double p = 0.0;  // EU_p parameter when is_eu_p

    /// G^{-1}(y) for |y| < c_p/2 (the open range of G), monotone Newton.
    double inverse(double y) const;
};

/// The p-elastica profile EU_p(z) = int_0^z (1+s^2)^{-(3/2 - 1/(2p))} ds,
/// evaluated through the substitution s = tan(phi) which yields the smooth
/// integrand cos(phi)^{1 - 1/p} on [0, pi/2].
ShapeFunction make_eu_p(double p);

/// Shared cache of EU_p shapes keyed by p.
const ShapeFunction& eu_p_shape(double p);

/// Nodal samples of u on the uniform grid x_i = i/N with u_0 = u_N = 0.
struct GridFunction {
    int N = 0;
    std::vector<double> u;  // N+1 nodal values

    GridFunction() = default;
    GridFunction(int n, std::vector<double> values);
    static GridFunction zeros(int n);

    double h() const { return 1.0 / N; }
    double x(int i) const { return static_cast<double>(i) / N; }

    /// Midpoint slope (u_{i+1} - u_i)/h for i in [0, N-1].
    double slope_mid(int i) const { return (u[i + 1] - u[i]) * N; }
    /// Central first difference at interior node i.
    double d1(int i) const { return (u[i + 1] - u[i - 1]) * (0.5 * N); }
    /// Second difference at interior node i.
    double d2(int i) const {
        return (u[i + 1] - 2.0 * u[i] + u[i - 1]) * (static_cast<double>(N) * N);
    }
};

}  // namespace pelastica
