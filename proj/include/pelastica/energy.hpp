#pragma once

#include <vector>

#include "pelastica/shape.hpp"

namespace pelastica::energy {

double eu_p(double p, double z);
double eu_p_inverse(double p, double y);

/// |z|^p, optionally smoothed to (z^2+eps^2)^{p/2} - eps^p so the gradient
/// stays Lipschitz through z = 0 during optimization.
double phi_pow(double z, double p, double eps = 0.0);
double phi_pow_d1(double z, double p, double eps = 0.0);
double phi_pow_d2(double z, double p, double eps);

/// Second quotient of G(u') at interior node i: (G(d_{i+1/2}) - G(d_{i-1/2}))/h.
double g_second_quotient(const ShapeFunction& G, const GridFunction& u, int i);

/// Discrete generalized p-elastica energy h * sum |(G(u')')_i|^p.
double energy_discrete(const ShapeFunction& G, double p, const GridFunction& u,
                       double eps = 0.0);

/// Same functional through the curvature form int |kappa|^p sqrt(1+u'^2).
double energy_curvature_form(double p, const GridFunction& u);

/// Exact gradient of energy_discrete wrt nodal values; entries 0 and N are
/// zero (fixed boundary).
std::vector<double> gradient_discrete(const ShapeFunction& G, double p,
                                      const GridFunction& u, double eps = 0.0);

/// Euler's substitution w = -p Gdot(u')^{p-1} |u''|^{p-2} u'' at interior
/// nodes (entries 0 and N are left zero; endpoint values are extrapolated by
/// the diagnostics).
std::vector<double> euler_substitution(const ShapeFunction& G, double p,
                                       const GridFunction& u);

}  // namespace pelastica::energy
