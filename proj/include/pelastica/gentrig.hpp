#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

namespace pelastica::gentrig {

struct Params {
    double q;
    double r;

    Params(double q_, double r_) : q(q_), r(r_) {
        if (!(q > 1.0)) throw std::domain_error("gentrig: q must be > 1");
        if (!(r > 0.0)) throw std::domain_error("gentrig: r must be > 0");
    }

    double qprime() const { return q / (q - 1.0); }

    friend bool operator==(const Params& a, const Params& b) {
        return a.q == b.q && a.r == b.r;
    }
};

/// Generalized sine/cosine pair for parameters (q,r).
///
/// asin(x) = int_0^x (1-t^r)^{-1/q} dt; sin is its inverse on the principal
/// branch, extended by reflection, oddness and 2*pi-periodicity; cos is the
/// derivative of sin, evaluated in closed form through the Pythagorean-type
/// identity |cos|^q + |sin|^r = 1.
///
/// The constructor builds a cumulative quadrature table so that asin and the
/// Newton inversion inside sin are cheap. All methods are const and the table
/// is immutable after construction, so instances are safe to share across
/// threads.
class GenTrig {
public:
    explicit GenTrig(Params params);

    const Params& params() const { return prm_; }

    /// Inverse sine, x in [0,1].
    double asin(double x) const;

    /// Half period pi_{q,r} = 2 asin(1).
    double pi() const { return 2.0 * half_pi_; }
    double half_pi() const { return half_pi_; }

    double sin(double x) const;
    double cos(double x) const;

private:
    double integrand(double t) const;
    // Tail integrand after the substitution t = 1 - tau^{q'} which removes
    // the endpoint singularity of (1-t^r)^{-1/q} at t=1.
    double tail_integrand(double tau) const;
    double asin_principal(double x) const;
    double invert(double x) const;  // solves asin(y) = x on [0, pi/2]

    Params prm_;
    double qprime_;
    double cut_;       // switch point between direct and substituted quadrature
    double half_pi_;   // asin(1)
    std::vector<double> knot_y_;  // ascending in [0,1]
    std::vector<double> knot_x_;  // asin(knot_y_)
    std::size_t n_main_;          // knots with y <= cut_
};

/// Shared, lazily-built instance cache keyed by (q,r).
std::shared_ptr<const GenTrig> get(Params params);

double asin_gen(Params params, double x);
double pi_gen(Params params);
double sin_gen(Params params, double x);
double cos_gen(Params params, double x);

}  // namespace pelastica::gentrig
