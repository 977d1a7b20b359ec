#include "pelastica/curves.hpp"

#include <cmath>

#include "pelastica/quadrature.hpp"

namespace pelastica::curves {

PElastica::PElastica(double p, double lambda) : p_(p), lambda_(lambda) {
    if (!(p > 1.0)) throw std::domain_error("PElastica: p must be > 1");
    if (!(lambda > 0.0)) throw std::domain_error("PElastica: lambda must be > 0");
    pprime_ = p / (p - 1.0);
    trig_ = gentrig::get(gentrig::Params(2.0, 2.0 * pprime_));
    alpha_ = std::pow(pprime_, -1.0 / pprime_) * std::pow(lambda, 1.0 / p);
    amp_ = std::pow(lambda * pprime_, 1.0 / pprime_);
    L_ = 0.5 * std::pow(pprime_, 1.0 / pprime_) * std::pow(lambda, -1.0 / p) *
         trig_->pi();
}

double PElastica::omega(double s) const { return -amp_ * trig_->sin(alpha_ * s); }

double PElastica::omega_prime(double s) const {
    return -lambda_ * trig_->cos(alpha_ * s);
}

double PElastica::curvature(double s) const {
    // |omega|^{(2-p)/(p-1)} omega = -(lambda p')^{1/p} sin^{1/(p-1)}.
    const double sn = trig_->sin(alpha_ * s);
    if (sn == 0.0) return 0.0;
    return -std::pow(lambda_ * pprime_, 1.0 / p_) *
           std::pow(std::abs(sn), 1.0 / (p_ - 1.0)) * (sn > 0.0 ? 1.0 : -1.0);
}

double PElastica::X_of(double s) const {
    auto f = [this](double t) {
        return std::pow(std::abs(trig_->sin(alpha_ * t)), pprime_);
    };
    return quad::adaptive(f, 0.0, s, 1e-12);
}

std::array<double, 2> PElastica::gamma(double s) const {
    if (s < -1e-12 || s > 2.0 * L_ * (1.0 + 1e-12)) {
        throw std::domain_error("PElastica::gamma: s outside [0, 2L]");
    }
    const double y = std::pow(pprime_, 1.0 / pprime_) *
                     std::pow(lambda_, -1.0 / p_) * trig_->sin(alpha_ * s);
    return {X_of(s), y};
}

std::array<double, 2> PElastica::gamma_prime(double s) const {
    const double sn = trig_->sin(alpha_ * s);
    return {std::pow(std::abs(sn), pprime_), trig_->cos(alpha_ * s)};
}

double PElastica::tangent_angle(double s) const {
    const auto t = gamma_prime(s);
    return std::atan2(t[1], t[0]);
}

double PElastica::polar_tangential_tan(double s) const {
    if (!(s > 0.0)) {
        throw std::domain_error("polar_tangential_tan: s must be positive");
    }
    if (s > L_ * (1.0 + 1e-12)) {
        throw std::domain_error("polar_tangential_tan: s must lie in (0, L]");
    }
    const auto g = gamma(s);
    const auto t = gamma_prime(s);
    const double cross = g[0] * t[1] - g[1] * t[0];
    const double dot = g[0] * t[0] + g[1] * t[1];
    return cross / dot;
}

PElastica::Sample PElastica::sample(int n) const {
    if (n < 2) throw std::invalid_argument("PElastica::sample: need n >= 2");
    Sample out;
    out.s.resize(n + 1);
    out.X.resize(n + 1);
    out.Y.resize(n + 1);
    out.k.resize(n + 1);
    out.theta.resize(n + 1);
    out.tan_pw.assign(n + 1, 0.0);
    const double ds = 2.0 * L_ / n;
    auto f = [this](double t) {
        return std::pow(std::abs(trig_->sin(alpha_ * t)), pprime_);
    };
    double x = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = ds * i;
        if (i > 0) x += quad::fixed_gauss<quad::GaussLegendre7>(f, s - ds, s);
        out.s[i] = s;
        out.X[i] = x;
        out.Y[i] = std::pow(pprime_, 1.0 / pprime_) *
                   std::pow(lambda_, -1.0 / p_) * trig_->sin(alpha_ * s);
        out.k[i] = curvature(s);
        out.theta[i] = tangent_angle(s);
        if (s > 0.0 && s <= L_ * (1.0 + 1e-12)) {
            const auto t = gamma_prime(s);
            const double cross = x * t[1] - out.Y[i] * t[0];
            const double dot = x * t[0] + out.Y[i] * t[1];
            out.tan_pw[i] = cross / dot;
        }
    }
    return out;
}

double omega_lambda(double p, double lambda, double s) {
    if (lambda == 0.0) return 0.0;
    return PElastica(p, lambda).omega(s);
}

double curvature_k(double p, double lambda, double s) {
    return PElastica(p, lambda).curvature(s);
}

std::array<double, 2> gamma(double p, double lambda, double s) {
    return PElastica(p, lambda).gamma(s);
}

double polar_tangential_tan(double p, double lambda, double s) {
    return PElastica(p, lambda).polar_tangential_tan(s);
}

std::pair<double, double> endpoint_constants(double p) {
    const double pp = p / (p - 1.0);
    const double x = 0.5 * std::pow(pp, -1.0 + 1.0 / pp) *
                     quad::beta(1.0 - 0.5 / p, 0.5);
    const double y = std::pow(pp, 1.0 / pp);
    return {x, y};
}

double c_p_of(const ShapeFunction& G) {
    double s = 1.0;
    double g = G.G(s);
    double inc_prev = g;
    for (int iter = 0; iter < 60; ++iter) {
        s *= 2.0;
        const double g2 = G.G(s);
        const double inc = g2 - g;
        if (inc < 0.0) throw std::runtime_error("c_p_of: G is not nondecreasing");
        if (inc < 2.5e-11) {
            // Geometric tail estimate from the last two doubling increments.
            double tail = 0.0;
            if (inc_prev > 0.0 && inc > 0.0 && inc < inc_prev) {
                const double ratio = inc / inc_prev;
                tail = inc * ratio / (1.0 - ratio);
            }
            return 2.0 * (g2 + tail);
        }
        inc_prev = inc;
        g = g2;
    }
    throw std::runtime_error("c_p_of: limit of G does not converge (assumption violated)");
}

double h_star(double p) {
    if (!(p > 1.0)) throw std::domain_error("h_star: p must be > 1");
    const double pp = p / (p - 1.0);
    return pp / quad::beta(0.5, 1.0 - 0.5 / p);
}

namespace {

// Truncation point Z for int_z^inf s Gdot(s) ds with tail below ~1e-11,
// found by doubling until the increment stalls.
double tail_integral_sgdot(const ShapeFunction& G, double z_low) {
    auto f = [&G](double s) { return s * G.Gdot(s); };
    double z_hi = std::max(2.0 * std::abs(z_low) + 2.0, 16.0);
    double total = quad::adaptive(f, z_low, z_hi, 1e-13);
    for (int iter = 0; iter < 60; ++iter) {
        const double inc = quad::adaptive(f, z_hi, 2.0 * z_hi, 1e-13);
        total += inc;
        z_hi *= 2.0;
        if (std::abs(inc) < 1e-12) return total;
    }
    throw std::runtime_error("comparison function: id*Gdot tail does not converge");
}

}  // namespace

double comparison_uc(const ShapeFunction& G, double c, double x) {
    if (!(c > 0.0) || !(c < G.c_p)) {
        throw std::domain_error("comparison_uc: c must lie in (0, c_p(G))");
    }
    if (x < 0.0 || x > 1.0) throw std::domain_error("comparison_uc: x outside [0,1]");
    if (x == 0.0) return 0.0;
    const double z_top = G.inverse(0.5 * c);
    const double z_x = G.inverse(0.5 * c - c * x);
    if (G.is_eu_p) {
        const double e = 0.5 - 0.5 / G.p;
        const double pp = G.p / (G.p - 1.0);
        return (pp / c) * (std::pow(1.0 + z_x * z_x, -e) -
                           std::pow(1.0 + z_top * z_top, -e));
    }
    auto f = [&G](double s) { return s * G.Gdot(s); };
    return quad::adaptive(f, z_x, z_top, 1e-13) / c;
}

double profile_U0(const ShapeFunction& G, double x) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("profile_U0: x outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    const double cp = G.c_p;
    const double z_x = G.inverse(0.5 * cp - cp * x);
    if (G.is_eu_p) {
        const double e = 0.5 - 0.5 / G.p;
        const double pp = G.p / (G.p - 1.0);
        return (pp / cp) * std::pow(1.0 + z_x * z_x, -e);
    }
    return tail_integral_sgdot(G, z_x) / cp;
}

double clamped_test_function(const ShapeFunction& G, double c, double delta,
                             double x) {
    if (!(delta > 0.0) || !(delta < 0.5)) {
        throw std::domain_error("clamped_test_function: delta must lie in (0, 1/2)");
    }
    if (!(c > 0.0) || !(c < G.c_p)) {
        throw std::domain_error("clamped_test_function: c must lie in (0, c_p(G))");
    }
    const double slope0 = G.inverse(0.5 * c);
    if (x <= delta) return slope0 * x;
    if (x >= 1.0 - delta) return slope0 * delta - slope0 * (x - (1.0 - delta));
    return slope0 * delta +
           (1.0 - 2.0 * delta) * comparison_uc(G, c, (x - delta) / (1.0 - 2.0 * delta));
}

ConeMinimizer exact_cone_minimizer(double p, double h, int N) {
    if (!(h > 0.0)) throw std::domain_error("exact_cone_minimizer: h must be > 0");
    const double hs = h_star(p);
    if (h >= hs) {
        throw NoMinimizerError("exact_cone_minimizer: h >= h_star, no minimizer exists");
    }
    if (N < 4 || N % 2 != 0) {
        throw std::invalid_argument("exact_cone_minimizer: N must be even and >= 4");
    }

    const PElastica c1(p, 1.0);
    const double L1 = c1.half_period();

    // tan(-pw_1) increases from 0 to 2 h_* on (0, L_1]; bisect for 2h.
    double lo = 0.0, hi = L1;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double v = (mid == 0.0) ? 0.0 : -c1.polar_tangential_tan(mid);
        if (v < 2.0 * h) lo = mid; else hi = mid;
    }
    const double s_star = 0.5 * (lo + hi);

    const double theta1 = c1.tangent_angle(s_star);  // in (0, pi/2)
    const double theta_u = std::acos(0.0) - theta1;  // pi/2 - theta1
    const auto g1 = c1.gamma(s_star);
    const double r1 = std::hypot(g1[0], g1[1]);
    const double lambda_u = std::pow(r1 / std::sqrt(0.25 + h * h), p);

    ConeMinimizer out;
    out.p = p;
    out.h = h;
    out.s_star = s_star;
    out.theta_u = theta_u;
    out.lambda_u = lambda_u;

    const double scale = std::pow(lambda_u, -1.0 / p);
    out.energy = 2.0 * p / (p - 1.0) * std::pow(lambda_u, 1.0 - 1.0 / p) * g1[0];

    // Dense march of the rotated, scaled curve on [0, s_star] in Gamma_1 arc
    // length gives brackets; each grid node then solves x_rot(s) = x_i exactly
    // so the nodal values carry no interpolation error (second and third
    // differences of u are taken downstream, which would amplify it by h^-3).
    const int M = 4 * N;
    const double rot = -std::acos(0.0) + theta_u;  // -pi/2 + theta_u
    const double cr = std::cos(rot), sr = std::sin(rot);
    const double ds = s_star / M;
    auto f = [&c1](double t) { return c1.gamma_prime(t)[0]; };
    std::vector<double> Xs(M + 1), xs(M + 1);
    Xs[0] = 0.0;
    xs[0] = 0.0;
    for (int j = 1; j <= M; ++j) {
        Xs[j] = Xs[j - 1] + quad::fixed_gauss<quad::GaussLegendre7>(f, ds * (j - 1), ds * j);
        xs[j] = scale * (cr * Xs[j] - sr * (-c1.omega(ds * j)));
    }

    GridFunction u = GridFunction::zeros(N);
    int j = 0;
    for (int i = 1; i <= N / 2; ++i) {
        const double x = static_cast<double>(i) / N;
        while (j + 1 < M && xs[j + 1] < x) ++j;
        // Safeguarded Newton for x_rot(s) = x on [s_j, s_{j+1}].
        double slo = ds * j, shi = ds * (j + 1);
        double s = 0.5 * (slo + shi);
        for (int iter = 0; iter < 80; ++iter) {
            const double X = Xs[j] + quad::fixed_gauss<quad::GaussLegendre7>(f, ds * j, s);
            const double fx = scale * (cr * X - sr * (-c1.omega(s))) - x;
            if (fx > 0.0) shi = s; else slo = s;
            const double dfx =
                scale * (cr * c1.gamma_prime(s)[0] - sr * (-c1.omega_prime(s)));
            double snext = (dfx > 0.0) ? s - fx / dfx : 0.5 * (slo + shi);
            if (!(snext > slo) || !(snext < shi)) snext = 0.5 * (slo + shi);
            if (std::abs(fx) < 1e-15 && std::abs(snext - s) < 1e-14) {
                s = snext;
                break;
            }
            s = snext;
        }
        const double X = Xs[j] + quad::fixed_gauss<quad::GaussLegendre7>(f, ds * j, s);
        u.u[i] = scale * (sr * X + cr * (-c1.omega(s)));
    }
    u.u[N / 2] = h;
    for (int i = 0; i < N / 2; ++i) u.u[N - i] = u.u[i];
    out.u = std::move(u);
    return out;
}

ArcLengthCurve reparam_graph_to_arclength(const GridFunction& u) {
    const int N = u.N;
    const double h = u.h();
    ArcLengthCurve out;
    out.s.resize(N + 1);
    out.kappa.resize(N + 1);
    out.s[0] = 0.0;
    for (int i = 0; i < N; ++i) {
        const double d = u.slope_mid(i);
        out.s[i + 1] = out.s[i] + h * std::sqrt(1.0 + d * d);
    }
    for (int i = 1; i < N; ++i) {
        const double d1 = u.d1(i);
        out.kappa[i] = u.d2(i) / std::pow(1.0 + d1 * d1, 1.5);
    }
    out.kappa[0] = 2.0 * out.kappa[1] - out.kappa[2];
    out.kappa[N] = 2.0 * out.kappa[N - 1] - out.kappa[N - 2];
    out.length = out.s[N];
    return out;
}

}  // namespace pelastica::curves
