// Acceptance gate: one pass/fail line per criterion, exit nonzero on any
// failure. Tolerances are pinned to the library's frozen oracle values.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pelastica/curves.hpp"
#include "pelastica/diagnostics.hpp"
#include "pelastica/energy.hpp"
#include "pelastica/gentrig.hpp"
#include "pelastica/quadrature.hpp"
#include "pelastica/rearrange.hpp"
#include "pelastica/shape.hpp"
#include "pelastica/solver.hpp"

using namespace pelastica;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const std::string& desc, bool ok, double seconds,
            double limit, const std::string& detail = "") {
    const bool in_time = seconds < limit;
    if (!ok || !in_time) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.2fs/%.0fs)%s%s\n",
                (ok && in_time) ? "PASS" : "FAIL", idx, desc.c_str(), seconds,
                limit, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

struct Timer {
    Clock::time_point t0 = Clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }
};

std::vector<std::vector<double>> read_csv(const std::string& path) {
    std::ifstream f(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header = true;
    while (std::getline(f, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        bool ok = true;
        while (std::getline(ss, tok, ',')) {
            try {
                row.push_back(std::stod(tok));
            } catch (...) {
                ok = false;
            }
        }
        if (ok) rows.push_back(std::move(row));
    }
    return rows;
}

GridFunction random_smooth(int N, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const double a1 = coef(rng), a2 = coef(rng), a3 = coef(rng);
    std::vector<double> u(static_cast<std::size_t>(N) + 1, 0.0);
    const double pi = std::acos(-1.0);
    for (int i = 1; i < N; ++i) {
        const double x = static_cast<double>(i) / N;
        u[i] = 0.3 * a1 * std::sin(pi * x) + 0.1 * a2 * std::sin(2.0 * pi * x) +
               0.05 * a3 * std::sin(3.0 * pi * x);
    }
    return GridFunction(N, std::move(u));
}

// --------------------------------------------------------------------------

void criterion1() {
    Timer t;
    double worst = 0.0;
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        const double r = 2.0 * p / (p - 1.0);
        auto trig = gentrig::get(gentrig::Params(2.0, r));
        const double span = 2.0 * trig->pi();
        for (int i = 0; i < 1000; ++i) {
            const double x = -span + 2.0 * span * i / 999.0;
            const double s = std::abs(trig->sin(x));
            const double c = std::abs(trig->cos(x));
            worst = std::max(worst,
                             std::abs(std::pow(c, 2.0) + std::pow(s, r) - 1.0));
        }
    }
    report(1, "generalized pythagorean identity at 4000 points", worst < 1e-10,
           t.elapsed(), 1.0, "max deviation " + std::to_string(worst));
}

void criterion2() {
    Timer t;
    const double pi24 = gentrig::pi_gen(gentrig::Params(2.0, 4.0));
    const bool a = std::abs(pi24 - 2.6220575543) < 1e-8;
    const double beta_form = 0.5 * quad::beta(0.25, 0.5);
    const bool b = std::abs(pi24 - beta_form) < 1e-10;
    report(2, "pi_{2,4} lemniscatic constant and beta cross-check", a && b,
           t.elapsed(), 1.0);
}

void criterion3() {
    Timer t;
    const double c2 = eu_p_shape(2.0).c_p;
    const double hs = curves::h_star(2.0);
    const auto [x1, y1] = curves::endpoint_constants(2.0);
    const bool ok = std::abs(c2 - 2.3962805) < 1e-6 &&
                    std::abs(hs - 0.8346268) < 1e-6 &&
                    std::abs(x1 - 0.8472131) < 1e-6 &&
                    std::abs(y1 - 1.4142136) < 1e-6 &&
                    std::abs(y1 / x1 - 2.0 * hs) < 1e-8;
    report(3, "threshold constants for p = 2", ok, t.elapsed(), 1.0);
}

void criterion4() {
    Timer t;
    bool ok = true;
    std::string note;
    for (double p : {1.5, 2.0, 3.0}) {
        const double pp = p / (p - 1.0);
        auto trig = gentrig::get(gentrig::Params(2.0, 2.0 * pp));
        for (double lam : {0.5, 1.0, 2.0, 10.0}) {
            const curves::PElastica c(p, lam);
            const curves::PElastica c1(p, 1.0);
            const double L = c.half_period();
            const double scale = std::pow(lam, -1.0 / p);
            const double alpha = std::pow(pp, -1.0 / pp) * std::pow(lam, 1.0 / p);
            const double x2l = c.gamma(2.0 * L)[0];
            for (int i = 1; i <= 7; ++i) {
                const double s = 2.0 * L * i / 8.0;
                const auto tp = c.gamma_prime(s);
                if (std::abs(tp[0] * tp[0] + tp[1] * tp[1] - 1.0) > 1e-10) {
                    ok = false;
                    note = "unit speed";
                }
                // Curvature via closed-form second derivatives.
                const double sn = trig->sin(alpha * s), cs = trig->cos(alpha * s);
                const double xpp = alpha * pp * std::pow(sn, pp - 1.0) * cs;
                const double ypp = -std::pow(pp, 1.0 - 1.0 / pp) *
                                   std::pow(lam, 1.0 / p) *
                                   std::pow(sn, 2.0 * pp - 1.0);
                if (std::abs(tp[0] * ypp - xpp * tp[1] - c.curvature(s)) > 1e-6) {
                    ok = false;
                    note = "curvature relation";
                }
                // Scaling covariance and arch symmetry.
                const auto g = c.gamma(s);
                const auto g1 = c1.gamma(s / scale);
                if (std::abs(g[0] - scale * g1[0]) > 1e-10 ||
                    std::abs(g[1] - scale * g1[1]) > 1e-10) {
                    ok = false;
                    note = "scaling";
                }
                const auto gr = c.gamma(2.0 * L - s);
                if (std::abs(gr[0] - (x2l - g[0])) > 1e-10 ||
                    std::abs(gr[1] - g[1]) > 1e-10) {
                    ok = false;
                    note = "symmetry";
                }
                // Degenerate curvature ODE residual by finite differences;
                // the step balances roundoff in the second difference against
                // the O(h^2) truncation.
                const double hfd = 3e-4;
                const double w = c.omega(s);
                const double wpp =
                    (c.omega(s + hfd) - 2.0 * w + c.omega(s - hfd)) / (hfd * hfd);
                const double zero_order =
                    (p - 1.0) * std::pow(std::abs(w), 2.0 / (p - 1.0)) * w;
                const double res = p * wpp + zero_order;
                // Residual terms grow with lambda, so compare relative to
                // their magnitude (floored at 1 for the small-amplitude end).
                if (std::abs(res) > 1e-4 * std::max(1.0, std::abs(zero_order))) {
                    ok = false;
                    note = "omega ODE";
                }
            }
        }
    }
    report(4, "curve identities across (p, lambda)", ok, t.elapsed(), 5.0, note);
}

void criterion5() {
    Timer t;
    bool ok = true;
    const double p = 2.0;
    const ShapeFunction& G = eu_p_shape(p);
    for (double frac : {0.3, 1.0}) {
        const double c = frac * 0.5 * G.c_p;
        double prev = 1e300;
        for (int N : {256, 512, 1024, 2048}) {
            std::vector<double> uv(static_cast<std::size_t>(N) + 1, 0.0);
            for (int i = 1; i < N; ++i) {
                uv[i] = curves::comparison_uc(G, c, static_cast<double>(i) / N);
            }
            const GridFunction u(N, std::move(uv));
            const double err =
                std::abs(energy::energy_discrete(G, p, u) - std::pow(c, p)) /
                std::pow(c, p);
            if (err >= prev) ok = false;  // monotone decrease required
            prev = err;
        }
        if (prev >= 1e-3) ok = false;
    }
    report(5, "discrete energy of u_c equals c^p with grid convergence", ok,
           t.elapsed(), 5.0);
}

void criterion6() {
    Timer t;
    bool ok = true;
    for (double p : {1.5, 2.0, 3.0}) {
        const ShapeFunction& G = eu_p_shape(p);
        const double eps = (p < 2.0) ? 1e-3 : 0.0;
        for (unsigned seed = 0; seed < 20; ++seed) {
            GridFunction u = random_smooth(128, 1000 + seed);
            const auto g = energy::gradient_discrete(G, p, u, eps);
            // A nodal step perturbs the difference quotient by step/h^2, so
            // truncation forces a step well below the usual FD optimum.
            const double step = 3e-10;
            double num = 0.0, den = 0.0;
            for (int i = 1; i < u.N; ++i) {
                const double keep = u.u[i];
                u.u[i] = keep + step;
                const double ep = energy::energy_discrete(G, p, u, eps);
                u.u[i] = keep - step;
                const double em = energy::energy_discrete(G, p, u, eps);
                u.u[i] = keep;
                const double fd = (ep - em) / (2.0 * step);
                num += (fd - g[i]) * (fd - g[i]);
                den += g[i] * g[i];
            }
            if (!(std::sqrt(num / den) < 1e-6)) ok = false;
        }
    }
    report(6, "analytic gradient vs central differences, 60 random functions",
           ok, t.elapsed(), 5.0);
}

void criterion7() {
    Timer t;
    bool ok = true;
    std::string note;
    for (double p : {1.5, 2.0, 3.0}) {
        for (double frac : {0.3, 0.6}) {
            const double h = frac * curves::h_star(p);
            const ShapeFunction& G = eu_p_shape(p);
            solver::SolveOptions opts;
            opts.N = 512;
            opts.symmetric = true;
            const auto rep = solver::minimize(
                G, p, solver::Obstacle::symmetric_cone(h), opts);
            const auto exact = curves::exact_cone_minimizer(p, h, opts.N);
            double gap = 0.0;
            for (int i = 0; i <= opts.N; ++i) {
                gap = std::max(gap,
                               std::abs(rep.minimizer.u[i] - exact.u.u[i]));
            }
            const double egap =
                std::abs(rep.energy - exact.energy) / exact.energy;
            if (!(gap < 5e-3 && egap < 1e-2 && rep.kkt_residual < 1e-6)) {
                ok = false;
                std::ostringstream os;
                os << "p=" << p << " h=" << h << " gap=" << gap
                   << " egap=" << egap << " kkt=" << rep.kkt_residual;
                note = os.str();
            }
        }
    }
    report(7, "solver matches the semi-analytic cone minimizer", ok,
           t.elapsed(), 120.0, note);
}

void criterion8() {
    Timer t;
    bool ok = true;
    std::string note;
    for (double p : {2.0, 3.0}) {
        const double h = 0.5 * curves::h_star(p);
        const ShapeFunction& G = eu_p_shape(p);
        solver::SolveOptions opts;
        opts.N = 1024;
        opts.symmetric = true;
        const auto cone = solver::Obstacle::symmetric_cone(h);
        const auto rep = solver::minimize(G, p, cone, opts);
        const auto diag =
            diagnostics::run_all(G, p, rep.minimizer, cone.sample(opts.N));
        bool here = diag.concavity.concave && diag.nondegeneracy.nondegenerate;
        here = here && std::abs(diag.bc.upp0) < 1e-2 &&
               std::abs(diag.bc.upp1) < 1e-2 && std::abs(diag.bc.w0) < 1e-2 &&
               std::abs(diag.bc.w1) < 1e-2;
        for (int i : diag.coincidence_set) {
            if (std::abs(i - opts.N / 2) > 2) here = false;
        }
        here = here && !diag.coincidence_set.empty();
        here = here && diag.slope.two_plateau &&
               std::abs(diag.slope.jump_node - opts.N / 2) <= 2;
        if (!here) {
            ok = false;
            std::ostringstream os;
            os << "p=" << p << " concave=" << diag.concavity.concave
               << " nondeg=" << diag.nondegeneracy.nondegenerate
               << " bc=(" << diag.bc.upp0 << "," << diag.bc.upp1 << ","
               << diag.bc.w0 << "," << diag.bc.w1 << ")"
               << " plateau=" << diag.slope.two_plateau
               << " jump=" << diag.slope.jump_node;
            note = os.str();
        }
    }
    report(8, "qualitative theory suite on converged solves", ok, t.elapsed(),
           60.0, note);
}

void criterion9() {
    Timer t;
    bool ok = true;
    std::string note;
    for (double p : {3.0, 2.0}) {
        const double h = 0.4 * curves::h_star(p);
        const ShapeFunction& G = eu_p_shape(p);
        solver::SolveOptions opts;
        opts.N = 4096;
        opts.symmetric = true;
        opts.max_iter = 800;
        const auto rep = solver::minimize(
            G, p, solver::Obstacle::symmetric_cone(h), opts);
        const auto fit = diagnostics::boundary_exponent_fit(G, p, rep.minimizer);
        if (p == 3.0 && !(std::abs(fit.fitted + 0.5) < 0.1)) {
            ok = false;
            note = "p=3 fitted " + std::to_string(fit.fitted);
        }
        if (p == 2.0 && !(fit.fitted > -0.15)) {
            ok = false;
            note = "p=2 fitted " + std::to_string(fit.fitted);
        }
    }
    report(9, "boundary regularity exponent at N = 4096", ok, t.elapsed(),
           120.0, note);
}

void criterion10() {
    Timer t;
    bool ok = true;
    std::string note;
    for (double p : {2.0, 3.0}) {
        const ShapeFunction& G = eu_p_shape(p);
        for (double A : {1e-3, 1e-2, 0.1, 0.5, 1.0}) {
            if (!(solver::nonexistence_H(G, p, A) <= A)) {
                ok = false;
                note = "H(A) > A";
            }
        }
        if (std::abs(solver::nonexistence_H(G, p, 1e4) -
                     2.0 * curves::h_star(p)) > 1e-2) {
            ok = false;
            note = "H(1e4) limit";
        }
        const double hs = curves::h_star(p);
        const auto v1 = solver::threshold_verdict(
            p, solver::Obstacle::symmetric_cone(hs));
        const auto v2 = solver::threshold_verdict(
            p, solver::Obstacle::symmetric_cone(1.2 * hs));
        const auto v3 = solver::threshold_verdict(
            p, solver::Obstacle::symmetric_cone(0.8 * hs));
        if (v1.verdict != solver::Verdict::NoMinimizer ||
            v2.verdict != solver::Verdict::NoMinimizer ||
            v3.verdict != solver::Verdict::ExistsUnique) {
            ok = false;
            note = "verdicts";
        }
    }
    report(10, "nonexistence kernel, limits, and sharp verdicts", ok,
           t.elapsed(), 10.0, note);
}

void criterion11() {
    Timer t;
    bool ok = true;
    std::string note;
    const double p = 2.0, h = 0.4;
    const ShapeFunction& G = eu_p_shape(p);
    solver::SolveOptions opts;
    opts.N = 512;
    opts.symmetric = true;
    const auto cone = solver::Obstacle::symmetric_cone(h);
    const auto rep = solver::minimize(G, p, cone, opts);
    const auto rr = rearrange::rearrange_minimizer(G, p, rep.minimizer);
    if (!(rr.energy_residual < 1e-8)) {
        ok = false;
        note = "energy residual " + std::to_string(rr.energy_residual);
    }
    if (!rr.symmetric) {
        ok = false;
        note = "not symmetric";
    }
    const auto psiv = cone.sample(opts.N);
    for (int i = 0; i <= opts.N; ++i) {
        if (rr.v.u[i] < psiv[i] - 1e-9) {
            ok = false;
            note = "infeasible competitor";
        }
    }
    for (double pc : {2.0, 5.0}) {
        const double c0 = std::sqrt(2.0 * pc / (3.0 * pc - 1.0));
        if (!rearrange::convexity_condition(eu_p_shape(pc), c0 - 1e-9)) {
            ok = false;
            note = "convexity condition";
        }
    }
    report(11, "rearranged competitor: energy, symmetry, feasibility", ok,
           t.elapsed(), 10.0, note);
}

void criterion12() {
    Timer t;
    bool ok = true;
    std::string note;
    const std::string cli = PELASTICA_CLI_PATH;
    const std::string base = "acceptance_out";
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);

    for (double p : {2.0, 5.0}) {
        const std::string dir = base + "/curve_p" + std::to_string(int(p));
        const std::string cmd = "\"" + cli + "\" curve --p " +
                                std::to_string(p) + " --samples 256 --out " +
                                dir + " > /dev/null";
        if (std::system(cmd.c_str()) != 0) {
            ok = false;
            note = "curve command failed";
            continue;
        }
        std::ostringstream prof;
        prof << dir << "/u0_profile_p" << p << ".csv";
        const auto rows = read_csv(prof.str());
        if (rows.empty()) {
            ok = false;
            note = "u0 profile missing";
            continue;
        }
        double peak = 0.0;
        for (const auto& r : rows) peak = std::max(peak, r[1]);
        const double expect = curves::profile_U0(eu_p_shape(p), 0.5);
        if (std::abs(peak - expect) > 1e-3) {
            ok = false;
            note = "u0 peak mismatch";
        }
    }

    for (double p : {2.0, 5.0}) {
        for (double frac : {0.4, 0.7}) {
            const double h = frac * curves::h_star(p);
            std::ostringstream dir;
            dir << base << "/solve_p" << int(p) << "_" << frac;
            std::ostringstream cmd;
            cmd << "\"" << cli << "\" solve --p " << p << " --height " << h
                << " --grid 256 --symmetric --out " << dir.str()
                << " > /dev/null";
            if (std::system(cmd.str().c_str()) != 0) {
                ok = false;
                note = "solve command failed";
                continue;
            }
            const auto rows = read_csv(dir.str() + "/minimizer.csv");
            if (rows.size() != 257) {
                ok = false;
                note = "minimizer rows";
                continue;
            }
            std::vector<double> uv;
            double peak = 0.0;
            for (const auto& r : rows) {
                uv.push_back(r[1]);
                peak = std::max(peak, r[1]);
            }
            if (std::abs(peak - h) > 1e-3) {
                ok = false;
                note = "peak height mismatch";
            }
            const GridFunction u(256, std::move(uv));
            if (!diagnostics::check_concavity(u).concave) {
                ok = false;
                note = "shape not concave";
            }
        }
    }
    report(12, "figure data regeneration through the CLI", ok, t.elapsed(),
           120.0, note);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all 12 criteria PASSED\n");
    return 0;
}
