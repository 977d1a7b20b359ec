#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pelastica/gentrig.hpp"
#include "pelastica/shape.hpp"

namespace pelastica::curves {

/// Thrown when a cone height is at or above the sharp existence threshold.
struct NoMinimizerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One member of the free p-elastica family: the solution omega of the
/// degenerate curvature ODE with omega(0)=0, omega'(0)=-lambda, and the
/// arc-length curve (X,Y) it generates on [0, 2L].
class PElastica {
public:
    PElastica(double p, double lambda);

    double p() const { return p_; }
    double lambda() const { return lambda_; }
    double pprime() const { return pprime_; }
    /// Half period L = (1/2) (p')^{1/p'} lambda^{-1/p} pi_{2,2p'}.
    double half_period() const { return L_; }

    double omega(double s) const;
    double omega_prime(double s) const;
    double curvature(double s) const;

    std::array<double, 2> gamma(double s) const;        // s in [0, 2L]
    std::array<double, 2> gamma_prime(double s) const;  // unit tangent
    double tangent_angle(double s) const;
    /// tan of the polar tangential angle, s in (0, L].
    double polar_tangential_tan(double s) const;

    struct Sample {
        std::vector<double> s, X, Y, k, theta, tan_pw;
    };
    /// n+1 equally spaced samples of the full arch [0, 2L].
    Sample sample(int n) const;

private:
    double X_of(double s) const;  // quadrature of sin^{p'}(alpha t)

    double p_, lambda_, pprime_;
    double alpha_;  // (p')^{-1/p'} lambda^{1/p}
    double amp_;    // (lambda p')^{1/p'}
    double L_;
    std::shared_ptr<const gentrig::GenTrig> trig_;  // (q,r) = (2, 2p')
};

double omega_lambda(double p, double lambda, double s);
double curvature_k(double p, double lambda, double s);
std::array<double, 2> gamma(double p, double lambda, double s);
double polar_tangential_tan(double p, double lambda, double s);

/// (X_1(L_1), Y_1(L_1)) in closed form via the beta function.
std::pair<double, double> endpoint_constants(double p);

/// c_p(G) = 2 lim_{s->inf} G(s), probed numerically with a tail estimate.
double c_p_of(const ShapeFunction& G);

/// Sharp cone-height threshold h_* = p' / B(1/2, 1 - 1/(2p)).
double h_star(double p);

/// Comparison function u_c with energy c^p, for c in (0, c_p(G)).
double comparison_uc(const ShapeFunction& G, double c, double x);

/// Limit profile U_0 = lim_{c->c_p} u_c; max value h_* for G = EU_p.
double profile_U0(const ShapeFunction& G, double x);

/// Piecewise comparison function with linear caps on [0,delta], [1-delta,1];
/// energy (1-2 delta)(c/(1-2 delta))^p.
double clamped_test_function(const ShapeFunction& G, double c, double delta,
                             double x);

struct ConeMinimizer {
    double p = 0.0;
    double h = 0.0;
    double s_star = 0.0;    // arc-length match point in Gamma_1
    double theta_u = 0.0;   // initial tangent angle of the graph
    double lambda_u = 0.0;  // scale of the elastica piece
    double energy = 0.0;
    GridFunction u;         // symmetric graph samples on [0,1]
};

/// Exact minimizer for the symmetric cone of height h at x = 1/2, built by
/// rotating and scaling the free elastica so it spans (0,0)-(1/2,h).
/// Throws NoMinimizerError for h >= h_star(p).
ConeMinimizer exact_cone_minimizer(double p, double h, int N = 1024);

struct ArcLengthCurve {
    std::vector<double> s;      // cumulative arc length at nodes
    std::vector<double> kappa;  // curvature resampled in s
    double length = 0.0;
};

ArcLengthCurve reparam_graph_to_arclength(const GridFunction& u);

}  // namespace pelastica::curves
