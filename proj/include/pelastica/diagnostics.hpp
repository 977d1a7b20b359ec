#pragma once

#include <string>
#include <vector>

#include "pelastica/shape.hpp"

namespace pelastica::diagnostics {

struct ConcavityVerdict {
    bool concave = false;
    double max_violation = 0.0;  // largest positive second quotient
};

struct NondegeneracyVerdict {
    bool nondegenerate = false;
    double min_neg_second = 0.0;  // min over interior nodes of -u''
    bool has_flat_core = false;
    int flat_core_start = -1;  // first node of the longest near-zero run
    int flat_core_length = 0;
};

struct BcResiduals {
    double upp0 = 0.0, upp1 = 0.0;  // u'' extrapolated to the endpoints
    double w0 = 0.0, w1 = 0.0;      // substitution variable w at the endpoints
};

struct SlopeFunction {
    std::vector<double> m;  // N+1 entries, endpoints extrapolated
    bool nonincreasing = false;
    bool two_plateau = false;
    int jump_node = -1;
    double plateau_left = 0.0;
    double plateau_right = 0.0;
    double max_plateau_deviation = 0.0;
};

struct ExponentFit {
    double fitted = 0.0;
    double expected = 0.0;  // (2-p)/(p-1)
    double r_squared = 0.0;
    int points_used = 0;
    // Linear pinch c*x <= w(x) <= C*x near the left endpoint.
    double w_pinch_c = 0.0;
    double w_pinch_C = 0.0;
    bool w_pinched = false;
};

struct DiagnosticsReport {
    ConcavityVerdict concavity;
    NondegeneracyVerdict nondegeneracy;
    BcResiduals bc;
    SlopeFunction slope;
    ExponentFit exponent;
    std::vector<int> coincidence_set;
};

/// All interior second quotients <= tol (default scales the 1e-8 unit
/// tolerance by N^2, the conditioning of the second difference).
ConcavityVerdict check_concavity(const GridFunction& u, double tol = -1.0);

/// Strict interior negativity of u'' and absence of flat cores (contiguous
/// runs of near-zero second quotients away from the boundary).
NondegeneracyVerdict check_nondegeneracy(const GridFunction& u);

/// Natural boundary residuals: u'' and the substitution variable w
/// extrapolated to x = 0 and x = 1 by one-sided second-order differences.
BcResiduals check_natural_bc(const ShapeFunction& G, double p,
                             const GridFunction& u);

/// Slope function m_i = Gdot(u'_i) (w_{i+1}-w_{i-1})/(2h) with monotonicity
/// and two-plateau detection (single jump at the obstacle tip for cones).
SlopeFunction slope_function_m(const ShapeFunction& G, double p,
                               const GridFunction& u);

/// Boundary exponent of |u'''| ~ x^e near x = 0: least-squares fit of
/// log|u'''| against {1, log x, x} (the linear column strips the subleading
/// analytic correction) on a window near the endpoint, using a stride-widened
/// third-difference stencil on fine grids to stay above nodal noise. Compared
/// with the expected exponent (2-p)/(p-1); also checks the linear pinch of w
/// near x = 0.
ExponentFit boundary_exponent_fit(const ShapeFunction& G, double p,
                                  const GridFunction& u);

/// Full post-solve report; psi are nodal obstacle samples for the
/// coincidence-set listing.
DiagnosticsReport run_all(const ShapeFunction& G, double p,
                          const GridFunction& u, const std::vector<double>& psi,
                          double delta_coin = 1e-8);

std::string to_json(const DiagnosticsReport& rep);

}  // namespace pelastica::diagnostics
