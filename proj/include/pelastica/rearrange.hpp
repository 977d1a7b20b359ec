#pragma once

#include <vector>

#include "pelastica/shape.hpp"

namespace pelastica::rearrange {

struct RearrangementResult {
    std::vector<double> f_star;  // rearranged interior samples, size N-1
    GridFunction v;              // reconstructed symmetric competitor
    double energy_residual = 0.0;  // |E(v) - E(u)|
    bool symmetric = false;
};

/// Symmetric decreasing rearrangement of interior samples f_1..f_{N-1}:
/// sort |f| descending, place outward from the center node, reattach the
/// common sign. A permutation, so every discrete norm is preserved exactly.
/// Mixed-sign input is rejected (outside the concave-minimizer use case).
std::vector<double> sym_decreasing_rearrangement(const std::vector<double>& f);

/// Solve G(v')' = f_star with v(0) = v(1) = 0: cumulative midpoint integral
/// F plus a root-found constant keeps the slopes in the range of G and the
/// mean slope zero. Throws if the cumulative sums escape the range of G.
GridFunction reconstruct_v(const ShapeFunction& G,
                           const std::vector<double>& f_star);

/// min over [0, C0] of 2 Gdot(z) + z Gddot(z) > 0 on a fine sample grid.
bool convexity_condition(const ShapeFunction& G, double C0);

/// Rearranged competitor for a computed minimizer u: f = G(u')' at interior
/// nodes, rearranged and reconstructed; energy is preserved to roundoff.
RearrangementResult rearrange_minimizer(const ShapeFunction& G, double p,
                                        const GridFunction& u);

}  // namespace pelastica::rearrange
