#include "pelastica/shape.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "pelastica/quadrature.hpp"

namespace pelastica {

double ShapeFunction::inverse(double y) const {
    if (!(std::abs(y) < 0.5 * c_p)) {
        throw std::domain_error("ShapeFunction::inverse: value outside the range of G");
    }
    if (y == 0.0) return 0.0;
    const double target = std::abs(y);
    // Bracket by doubling, then safeguarded Newton.
    double lo = 0.0, hi = 1.0;
    while (G(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("ShapeFunction::inverse: bracket failed");
    }
    double z = std::min(hi, target / Gdot(0.0));
    for (int iter = 0; iter < 200; ++iter) {
        const double f = G(z) - target;
        if (f > 0.0) hi = z; else lo = z;
        double znext = z - f / Gdot(z);
        if (!(znext > lo) || !(znext < hi)) znext = 0.5 * (lo + hi);
        if (std::abs(znext - z) < 1e-13 * std::max(1.0, std::abs(z)) && std::abs(f) < 1e-12) {
            z = znext;
            break;
        }
        z = znext;
    }
    return y > 0.0 ? z : -z;
}

namespace {

// Cumulative table of int_0^phi cos(t)^a dt on [0, pi/2] with a = 1 - 1/p.
// Near pi/2 the integrand has a fractional-power singularity in its
// derivatives, so the last stretch is integrated through the series of
// int_0^psi sin(t)^a dt = psi^{a+1} [1/(a+1) + e2 psi^2/(a+3) + ...] instead
// of quadrature; with psi <= 0.1 the truncation sits below 1e-12.
class EuTable {
public:
    explicit EuTable(double p) : expo_(1.0 - 1.0 / p) {
        const double top = std::acos(0.0);  // pi/2
        cut_ = top - kPsi0;
        knots_.resize(kKnots + 1);
        vals_.resize(kKnots + 1);
        knots_[0] = 0.0;
        vals_[0] = 0.0;
        derivs_.resize(kKnots + 1);
        derivs_[0] = 1.0;
        auto f = [this](double t) { return std::pow(std::cos(t), expo_); };
        for (std::size_t i = 1; i <= kKnots; ++i) {
            knots_[i] = cut_ * static_cast<double>(i) / kKnots;
            vals_[i] = vals_[i - 1] +
                       quad::fixed_gauss<quad::GaussLegendre15>(f, knots_[i - 1], knots_[i]);
            derivs_[i] = f(knots_[i]);
        }
        sup_ = vals_.back() + tail(kPsi0);
    }

    // The knots are uniform and the exact derivative cos(t)^a is known, so a
    // cubic Hermite read-off is O(1) per call and accurate to ~1e-13; the
    // solver evaluates this in its innermost energy loop.
    double eval(double phi) const {
        if (phi <= 0.0) return 0.0;
        const double top = std::acos(0.0);
        if (phi >= top) return sup_;
        if (phi > cut_) return sup_ - tail(top - phi);
        const double dx = cut_ / kKnots;
        std::size_t k = static_cast<std::size_t>(phi / dx);
        if (k >= kKnots) k = kKnots - 1;
        const double t = (phi - knots_[k]) / dx;
        const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        const double h10 = t * (1.0 - t) * (1.0 - t);
        const double h01 = t * t * (3.0 - 2.0 * t);
        const double h11 = t * t * (t - 1.0);
        return h00 * vals_[k] + h10 * dx * derivs_[k] + h01 * vals_[k + 1] +
               h11 * dx * derivs_[k + 1];
    }

    double sup() const { return sup_; }

private:
    // int_0^psi sin(t)^a dt via (sin t / t)^a = exp(a log(sin t / t)).
    double tail(double psi) const {
        const double a = expo_;
        const double e2 = -a / 6.0;
        const double e4 = -a / 180.0 + a * a / 72.0;
        const double e6 = -a / 2835.0 + a * a / 1080.0 - a * a * a / 1296.0;
        const double s2 = psi * psi;
        return std::pow(psi, a + 1.0) *
               (1.0 / (a + 1.0) + e2 * s2 / (a + 3.0) + e4 * s2 * s2 / (a + 5.0) +
                e6 * s2 * s2 * s2 / (a + 7.0));
    }

    static constexpr std::size_t kKnots = 2048;
    static constexpr double kPsi0 = 0.1;
    double expo_;
    double cut_ = 0.0;
    double sup_ = 0.0;
    std::vector<double> knots_;
    std::vector<double> vals_;
    std::vector<double> derivs_;
};

}  // namespace

ShapeFunction make_eu_p(double p) {
    if (!(p > 1.0)) throw std::domain_error("EU_p: p must be > 1");
    auto table = std::make_shared<EuTable>(p);
    const double a = 1.5 - 0.5 / p;  // decay exponent of Gdot
    ShapeFunction s;
    s.name = "eu_p";
    s.is_eu_p = true;
    s.p = p;
    s.c_p = 2.0 * table->sup();
    s.G = [table](double z) {
        const double v = table->eval(std::atan(std::abs(z)));
        return z >= 0.0 ? v : -v;
    };
    s.Gdot = [a](double z) { return std::pow(1.0 + z * z, -a); };
    s.Gddot = [a](double z) {
        return -2.0 * a * z * std::pow(1.0 + z * z, -a - 1.0);
    };
    return s;
}

const ShapeFunction& eu_p_shape(double p) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<ShapeFunction>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end()) {
        it = cache.emplace(p, std::make_unique<ShapeFunction>(make_eu_p(p))).first;
    }
    return *it->second;
}

GridFunction::GridFunction(int n, std::vector<double> values) : N(n), u(std::move(values)) {
    if (N < 2 || u.size() != static_cast<std::size_t>(N) + 1) {
        throw std::invalid_argument("GridFunction: need N >= 2 and N+1 nodal values");
    }
    u.front() = 0.0;
    u.back() = 0.0;
}

GridFunction GridFunction::zeros(int n) {
    return GridFunction(n, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
}

}  // namespace pelastica
