#include "pelastica/gentrig.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "pelastica/quadrature.hpp"

namespace pelastica::gentrig {

namespace {
// The switch to the singularity-removing tail substitution happens well away
// from t = 1, so the direct integrand stays tame on every main panel.
constexpr double kCutGap = 0.05;
constexpr std::size_t kMainKnots = 2048;
constexpr std::size_t kTailKnots = 512;
}  // namespace

double GenTrig::integrand(double t) const {
    return std::pow(1.0 - std::pow(t, prm_.r), -1.0 / prm_.q);
}

double GenTrig::tail_integrand(double tau) const {
    // 1 - (1 - tau^q')^r via expm1/log1p to avoid cancellation near tau = 0.
    const double u = std::pow(tau, qprime_);
    const double one_minus_tr = -std::expm1(prm_.r * std::log1p(-u));
    return qprime_ * std::pow(tau, qprime_ - 1.0) *
           std::pow(one_minus_tr, -1.0 / prm_.q);
}

GenTrig::GenTrig(Params params) : prm_(params), qprime_(params.qprime()) {
    cut_ = 1.0 - kCutGap;

    knot_y_.reserve(kMainKnots + kTailKnots + 2);
    knot_x_.reserve(kMainKnots + kTailKnots + 2);
    knot_y_.push_back(0.0);
    knot_x_.push_back(0.0);

    auto f = [this](double t) { return integrand(t); };
    double acc = 0.0;
    for (std::size_t i = 1; i <= kMainKnots; ++i) {
        const double y0 = cut_ * static_cast<double>(i - 1) / kMainKnots;
        const double y1 = cut_ * static_cast<double>(i) / kMainKnots;
        acc += quad::fixed_gauss<quad::GaussLegendre15>(f, y0, y1);
        knot_y_.push_back(y1);
        knot_x_.push_back(acc);
    }
    n_main_ = knot_y_.size();

    // Tail [cut, 1]: march tau = (1-y)^{1/q'} down to zero.
    auto g = [this](double tau) { return tail_integrand(tau); };
    const double tau_top = std::pow(kCutGap, 1.0 / qprime_);
    for (std::size_t i = 1; i <= kTailKnots; ++i) {
        const double t1 = tau_top * static_cast<double>(kTailKnots - i) / kTailKnots;
        const double t0 = tau_top * static_cast<double>(kTailKnots - i + 1) / kTailKnots;
        acc += quad::fixed_gauss<quad::GaussLegendre15>(g, t1, t0);
        knot_y_.push_back(1.0 - std::pow(t1, qprime_));
        knot_x_.push_back(acc);
    }
    knot_y_.back() = 1.0;
    half_pi_ = knot_x_.back();
}

double GenTrig::asin_principal(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return half_pi_;
    const auto it = std::upper_bound(knot_y_.begin(), knot_y_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - knot_y_.begin()) - 1;
    const double yk = knot_y_[k];
    if (x == yk) return knot_x_[k];
    if (k + 1 < n_main_) {
        auto f = [this](double t) { return integrand(t); };
        return knot_x_[k] + quad::fixed_gauss<quad::GaussLegendre7>(f, yk, x);
    }
    auto g = [this](double tau) { return tail_integrand(tau); };
    const double tau_k = std::pow(1.0 - yk, 1.0 / qprime_);
    const double tau_x = std::pow(1.0 - x, 1.0 / qprime_);
    return knot_x_[k] + quad::fixed_gauss<quad::GaussLegendre7>(g, tau_x, tau_k);
}

double GenTrig::asin(double x) const {
    if (x < 0.0 || x > 1.0) {
        throw std::domain_error("asin_gen: argument must lie in [0,1]");
    }
    return asin_principal(x);
}

double GenTrig::invert(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= half_pi_) return 1.0;
    // Bracket from the table, then safeguarded Newton with the closed-form
    // derivative d/dy asin(y) = (1-y^r)^{-1/q}.
    const auto it = std::upper_bound(knot_x_.begin(), knot_x_.end(), x);
    std::size_t k = static_cast<std::size_t>(it - knot_x_.begin());
    double lo = knot_y_[k - 1], hi = (k < knot_y_.size()) ? knot_y_[k] : 1.0;
    const double xlo = knot_x_[k - 1], xhi = (k < knot_x_.size()) ? knot_x_[k] : half_pi_;
    double y = lo + (hi - lo) * (x - xlo) / std::max(xhi - xlo, 1e-300);

    for (int iter = 0; iter < 60; ++iter) {
        const double fx = asin_principal(y) - x;
        if (fx > 0.0) hi = y; else lo = y;
        const double slope_inv = std::pow(1.0 - std::pow(y, prm_.r), 1.0 / prm_.q);
        double ynext = y - fx * slope_inv;
        if (!(ynext > lo) || !(ynext < hi)) ynext = 0.5 * (lo + hi);
        if (std::abs(fx) < 1e-14 && std::abs(ynext - y) < 1e-13) return ynext;
        y = ynext;
        if (hi - lo < 1e-16) break;
    }
    return y;
}

double GenTrig::sin(double x) const {
    const double period = 2.0 * pi();
    double xr = std::fmod(x, period);
    if (xr < 0.0) xr += period;
    double sign = 1.0;
    if (xr > pi()) {           // sin(x) = -sin(2*pi - x)
        xr = period - xr;
        sign = -1.0;
    }
    if (xr > half_pi_) {       // sin(x) = sin(pi - x)
        xr = pi() - xr;
    }
    return sign * invert(xr);
}

double GenTrig::cos(double x) const {
    const double period = 2.0 * pi();
    double xr = std::fmod(x, period);
    if (xr < 0.0) xr += period;
    const double sign = (xr <= half_pi_ || xr >= period - half_pi_) ? 1.0 : -1.0;
    const double s = std::abs(sin(xr));
    return sign * std::pow(1.0 - std::pow(s, prm_.r), 1.0 / prm_.q);
}

std::shared_ptr<const GenTrig> get(Params params) {
    static std::mutex mu;
    static std::map<std::pair<double, double>, std::shared_ptr<const GenTrig>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(params.q, params.r);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_shared<GenTrig>(params)).first;
    }
    return it->second;
}

double asin_gen(Params params, double x) { return get(params)->asin(x); }
double pi_gen(Params params) { return get(params)->pi(); }
double sin_gen(Params params, double x) { return get(params)->sin(x); }
double cos_gen(Params params, double x) { return get(params)->cos(x); }

}  // namespace pelastica::gentrig
