#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pelastica/shape.hpp"

namespace pelastica::solver {

/// Thrown when an obstacle or shape violates the standing assumptions
/// (negative endpoint values, positive maximum, derivative decay).
struct AssumptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Obstacle psi on [0,1]: a cone with an interior tip, a symmetric cone with
/// the tip at x = 1/2, or arbitrary nodal samples. Admissible obstacles have
/// psi(0) < 0, psi(1) < 0 and max psi > 0.
struct Obstacle {
    enum class Kind { Cone, SymmetricCone, Sampled };

    Kind kind = Kind::SymmetricCone;
    double h = 0.0;         // tip height (cone kinds)
    double x_tip = 0.5;     // tip abscissa (Cone)
    double end0 = -1.0;     // psi(0)
    double end1 = -1.0;     // psi(1)
    std::vector<double> values;  // Sampled: nodal values, size M+1

    static Obstacle symmetric_cone(double height, double endpoint = -1.0);
    static Obstacle cone(double tip_x, double height, double endpoint0,
                         double endpoint1);
    static Obstacle sampled(std::vector<double> nodal_values);

    double eval(double x) const;
    /// Nodal samples on the uniform grid with N cells.
    std::vector<double> sample(int N) const;
    /// Throws AssumptionError unless psi(0) < 0, psi(1) < 0, max psi > 0.
    void validate() const;
};

struct SolveOptions {
    int N = 512;
    double tol = 1e-6;       // target KKT residual
    bool symmetric = false;  // minimize over the symmetric class
    int max_iter = 1000;     // projected-gradient iterations per stage
    std::vector<double> eps_schedule = {1e-2, 1e-6, 0.0};
    double delta_coin = 1e-8;  // coincidence detection threshold
};

struct SolveReport {
    GridFunction minimizer;
    double energy = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<int> coincidence_nodes;
    std::vector<double> multipliers;  // mu_i >= 0, zero off the coincidence set
    std::string verdict;  // "exists_unique" | "no_minimizer" | "unknown"
    double h_star_value = 0.0;  // filled for cone obstacles
    double c_p_value = 0.0;
    std::string message;
};

/// Projected-gradient minimization of the discrete energy over {u_i >= psi_i}
/// (and u_i = u_{N-i} in symmetric mode), with epsilon-continuation on the
/// smoothed |.|^p and a banded projected-Newton polish to drive the KKT
/// residual below tol. Non-convergence is reported, not thrown.
SolveReport minimize(const ShapeFunction& G, double p, const Obstacle& psi,
                     const SolveOptions& opts = {});

/// Discrete variational-inequality residual of a feasible u: sup of |g_i|
/// over free nodes and |min(g_i, 0)| over coincidence nodes, where g is the
/// energy gradient. Zero exactly at a discrete critical point.
double vi_residual(const ShapeFunction& G, double p, const GridFunction& u,
                   const std::vector<double>& psi, double delta_coin = 1e-8);

/// Nodal multipliers mu_i = max(g_i, 0) on the coincidence band
/// {u_i - psi_i < delta_coin}, zero elsewhere.
std::vector<double> estimate_coincidence_measure(const ShapeFunction& G,
                                                 double p,
                                                 const GridFunction& u,
                                                 const std::vector<double>& psi,
                                                 double delta_coin = 1e-8);

enum class Verdict { ExistsUnique, NoMinimizer };

struct ThresholdVerdict {
    Verdict verdict = Verdict::ExistsUnique;
    double h = 0.0;
    double h_star = 0.0;
};

/// Sharp existence/uniqueness verdict for symmetric cone obstacles:
/// exists_unique iff psi(1/2) < h_star(p). Throws for non-cone obstacles.
ThresholdVerdict threshold_verdict(double p, const Obstacle& psi);

struct ExistenceCheck {
    bool small_energy = false;   // trial_energy < (c_p/2)^p
    double trial_energy = 0.0;
    double bound = 0.0;          // (c_p/2)^p, full class
    double bound_sym = 0.0;      // c_p^p, symmetric class
    bool dominated_by_uc = false;  // psi <= u_c with c = trial_energy^{1/p}
};

/// Small-obstacle existence test: compares a comparison-function energy with
/// the strict threshold (c_p(G)/2)^p and reports the u_c-domination check.
ExistenceCheck existence_bound_check(const ShapeFunction& G, double p,
                                     const Obstacle& psi, double trial_energy);

/// H(A) = [int_0^A s Gdot(s) (A-s)^{-1/p} ds] / [int_0^A Gdot(s) (A-s)^{-1/p} ds],
/// the sup-norm bound kernel; singular weight removed by 1 - z = tau^{p'}.
double nonexistence_H(const ShapeFunction& G, double p, double A);

/// (1/2) sup_A H(A) over a log grid in [1e-3, 1e5] plus the analytic limit
/// 2 int_0^inf s Gdot / c_p; any minimizer height is bounded by this value.
double nonexistence_bound(const ShapeFunction& G, double p);

}  // namespace pelastica::solver
