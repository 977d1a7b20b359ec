// Command-line front end: explicit elastica curves, obstacle-problem solves,
// existence thresholds, sup-norm bound sweeps, and figure data regeneration.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "output.hpp"
#include "pelastica/curves.hpp"
#include "pelastica/diagnostics.hpp"
#include "pelastica/energy.hpp"
#include "pelastica/rearrange.hpp"
#include "pelastica/shape.hpp"
#include "pelastica/solver.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAssumption = 3;
constexpr int kExitNoConvergence = 4;

using nlohmann::json;
using namespace pelastica;

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::string section;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line is not key=value: " + line);
        }
        std::string key = trim(line.substr(0, eq));
        if (!section.empty()) key = section + "." + key;
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

void write_manifest(const std::string& dir, json config) {
    config["version"] = kVersion;
    cliout::write_file(dir + "/manifest.json", config.dump(2));
}

void write_u0_profile(const std::string& dir, double p, int samples,
                      bool svg) {
    const ShapeFunction& G = eu_p_shape(p);
    std::vector<std::vector<double>> rows;
    cliout::SvgSeries series{"#1f77b4", {}};
    for (int i = 0; i <= samples; ++i) {
        const double x = static_cast<double>(i) / samples;
        const double v = curves::profile_U0(G, x);
        rows.push_back({x, v});
        series.pts.emplace_back(x, v);
    }
    std::ostringstream name;
    name << dir << "/u0_profile_p" << p;
    cliout::write_file(name.str() + ".csv", cliout::csv_table("x,U0", rows));
    if (svg) {
        cliout::write_file(name.str() + ".svg", cliout::svg_polylines({series}));
    }
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

int run_curve(double p, double lambda, int samples, const std::string& out,
              const std::string& format) {
    cliout::ensure_dir(out);
    const curves::PElastica curve(p, lambda);
    const auto s = curve.sample(samples);

    std::vector<std::vector<double>> rows;
    cliout::SvgSeries xy{"#1f77b4", {}};
    for (std::size_t i = 0; i < s.s.size(); ++i) {
        rows.push_back({s.s[i], s.X[i], s.Y[i], s.k[i], s.theta[i], s.tan_pw[i]});
        xy.pts.emplace_back(s.X[i], s.Y[i]);
    }
    cliout::write_file(out + "/curve.csv",
                       cliout::csv_table("s,X,Y,k,theta,tan_pw", rows));
    const bool svg = format == "svg";
    if (svg) cliout::write_file(out + "/curve.svg", cliout::svg_polylines({xy}));
    write_u0_profile(out, p, samples, svg);

    write_manifest(out, json{{"subcommand", "curve"},
                             {"p", p},
                             {"lambda", lambda},
                             {"samples", samples},
                             {"format", format},
                             {"total_length", 2.0 * curve.half_period()},
                             {"half_period", curve.half_period()}});
    return kExitOk;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveArgs {
    double p = 2.0;
    double height = 0.4;
    double theta = 0.5;     // tip abscissa
    double endpoint = -1.0; // psi(0) = psi(1)
    int N = 512;
    double tol = 1e-6;
    int max_iter = 2000;
    bool symmetric = false;
    bool with_exact = false;
    bool force = false;
    std::string out = "out";
    std::string format = "csv";
    std::vector<double> eps_schedule = {1e-2, 1e-6, 0.0};
};

void apply_config(SolveArgs& a, const std::map<std::string, std::string>& kv,
                  const CLI::App* cmd) {
    auto given = [cmd](const std::string& flag) {
        return cmd->count(flag) > 0;
    };
    for (const auto& [key, val] : kv) {
        if (key == "p") {
            if (!given("--p")) a.p = std::stod(val);
        } else if (key == "G") {
            if (val != "eu_p") {
                throw std::runtime_error("config: only G=eu_p is supported");
            }
        } else if (key == "obstacle.kind") {
            if (val != "cone" && val != "symmetric_cone") {
                throw std::runtime_error("config: unknown obstacle.kind " + val);
            }
        } else if (key == "obstacle.h") {
            if (!given("--height")) a.height = std::stod(val);
        } else if (key == "obstacle.theta") {
            if (!given("--theta")) a.theta = std::stod(val);
        } else if (key == "obstacle.endpoint") {
            if (!given("--endpoint")) a.endpoint = std::stod(val);
        } else if (key == "grid.N") {
            if (!given("--grid")) a.N = std::stoi(val);
        } else if (key == "tol") {
            if (!given("--tol")) a.tol = std::stod(val);
        } else if (key == "max_iter") {
            if (!given("--max-iter")) a.max_iter = std::stoi(val);
        } else if (key == "symmetric") {
            if (!given("--symmetric")) a.symmetric = (val == "true" || val == "1");
        } else if (key == "epsilon_schedule") {
            a.eps_schedule = parse_list(val);
        } else {
            throw std::runtime_error("config: unknown key " + key);
        }
    }
}

int run_solve(const SolveArgs& a) {
    cliout::ensure_dir(a.out);
    const ShapeFunction& G = eu_p_shape(a.p);
    const solver::Obstacle psi =
        (a.theta == 0.5)
            ? solver::Obstacle::symmetric_cone(a.height, a.endpoint)
            : solver::Obstacle::cone(a.theta, a.height, a.endpoint, a.endpoint);
    psi.validate();

    // The sharp verdict is only decided for symmetric cones.
    solver::ThresholdVerdict tv;
    tv.verdict = solver::Verdict::ExistsUnique;
    if (a.theta == 0.5) {
        tv = solver::threshold_verdict(a.p, psi);
        json verdict_json{{"p", a.p},
                          {"h", tv.h},
                          {"h_star", tv.h_star},
                          {"verdict", tv.verdict == solver::Verdict::ExistsUnique
                                          ? "exists_unique"
                                          : "no_minimizer"}};
        cliout::write_file(a.out + "/verdict.json", verdict_json.dump(2));
    }
    if (tv.verdict == solver::Verdict::NoMinimizer) {
        cliout::write_file(a.out + "/no_minimizer",
                           "tip height >= sharp threshold h_*; no minimizer "
                           "exists for this cone\n");
        if (!a.force) {
            write_manifest(a.out, json{{"subcommand", "solve"},
                                       {"p", a.p},
                                       {"height", a.height},
                                       {"verdict", "no_minimizer"},
                                       {"solved", false}});
            std::cout << "no_minimizer: h = " << tv.h << " >= h_* = " << tv.h_star
                      << "\n";
            return kExitOk;
        }
    }

    solver::SolveOptions opts;
    opts.N = a.N;
    opts.tol = a.tol;
    opts.symmetric = a.symmetric;
    opts.max_iter = a.max_iter;
    opts.eps_schedule = a.eps_schedule;
    const solver::SolveReport rep = solver::minimize(G, a.p, psi, opts);

    std::vector<std::vector<double>> rows;
    cliout::SvgSeries su{"#1f77b4", {}}, spsi{"#d62728", {}};
    for (int i = 0; i <= rep.minimizer.N; ++i) {
        const double x = rep.minimizer.x(i);
        rows.push_back({x, rep.minimizer.u[i]});
        su.pts.emplace_back(x, rep.minimizer.u[i]);
        spsi.pts.emplace_back(x, psi.eval(x));
    }
    cliout::write_file(a.out + "/minimizer.csv", cliout::csv_table("x,u", rows));
    if (a.format == "svg") {
        cliout::write_file(a.out + "/minimizer.svg",
                           cliout::svg_polylines({spsi, su}));
    }

    json report{{"energy", rep.energy},
                {"kkt_residual", rep.kkt_residual},
                {"iterations", rep.iterations},
                {"converged", rep.converged},
                {"coincidence_nodes", rep.coincidence_nodes},
                {"verdict", rep.verdict},
                {"h_star", rep.h_star_value},
                {"c_p", rep.c_p_value},
                {"message", rep.message}};
    cliout::write_file(a.out + "/report.json", report.dump(2));

    const auto diag = diagnostics::run_all(G, a.p, rep.minimizer,
                                           psi.sample(rep.minimizer.N));
    cliout::write_file(a.out + "/diagnostics.json", diagnostics::to_json(diag));

    json manifest{{"subcommand", "solve"},
                  {"p", a.p},
                  {"height", a.height},
                  {"theta", a.theta},
                  {"endpoint", a.endpoint},
                  {"grid", a.N},
                  {"tol", a.tol},
                  {"max_iter", a.max_iter},
                  {"symmetric", a.symmetric},
                  {"format", a.format},
                  {"solved", true},
                  {"converged", rep.converged},
                  {"energy", rep.energy}};

    if (a.with_exact && a.theta == 0.5 &&
        tv.verdict == solver::Verdict::ExistsUnique) {
        const auto exact = curves::exact_cone_minimizer(a.p, a.height, a.N);
        std::vector<std::vector<double>> erows;
        double gap = 0.0;
        for (int i = 0; i <= a.N; ++i) {
            erows.push_back({exact.u.x(i), exact.u.u[i]});
            gap = std::max(gap, std::abs(exact.u.u[i] - rep.minimizer.u[i]));
        }
        cliout::write_file(a.out + "/exact_cone.csv",
                           cliout::csv_table("x,u", erows));
        manifest["sup_gap_vs_exact"] = gap;
        manifest["exact_energy"] = exact.energy;
    }
    write_manifest(a.out, manifest);

    std::cout << "energy " << rep.energy << "  kkt " << rep.kkt_residual
              << "  iterations " << rep.iterations << "\n";
    return rep.converged ? kExitOk : kExitNoConvergence;
}

// ---------------------------------------------------------------------------
// threshold / hbound / sweep
// ---------------------------------------------------------------------------

int run_threshold(double p, const std::string& out) {
    cliout::ensure_dir(out);
    const double hs = curves::h_star(p);
    const double cp = eu_p_shape(p).c_p;
    const auto [x1, y1] = curves::endpoint_constants(p);
    std::vector<std::vector<double>> rows = {
        {p, hs, cp, x1, y1, y1 / x1 - 2.0 * hs}};
    cliout::write_file(out + "/threshold.csv",
                       cliout::csv_table(
                           "p,h_star,c_p,X1_L1,Y1_L1,ratio_minus_2hstar", rows));
    write_manifest(out, json{{"subcommand", "threshold"}, {"p", p}});
    std::cout << "p " << p << "  h_star " << hs << "  c_p " << cp << "\n";
    return kExitOk;
}

int run_hbound(double p, double a_min, double a_max, int num,
               const std::string& out) {
    cliout::ensure_dir(out);
    const ShapeFunction& G = eu_p_shape(p);
    std::vector<std::vector<double>> rows;
    const double llo = std::log(a_min), lhi = std::log(a_max);
    for (int k = 0; k < num; ++k) {
        const double A = std::exp(llo + (lhi - llo) * k / (num - 1));
        rows.push_back({A, solver::nonexistence_H(G, p, A)});
    }
    // Analytic A -> infinity limit as the final row.
    rows.push_back({std::numeric_limits<double>::infinity(),
                    2.0 * curves::h_star(p)});
    cliout::write_file(out + "/hbound.csv", cliout::csv_table("A,H", rows));
    write_manifest(out, json{{"subcommand", "hbound"},
                             {"p", p},
                             {"A_min", a_min},
                             {"A_max", a_max},
                             {"num", num},
                             {"bound", solver::nonexistence_bound(G, p)}});
    return kExitOk;
}

int run_sweep(const std::string& p_list, const std::string& h_list,
              const std::string& out) {
    cliout::ensure_dir(out);
    const std::vector<double> ps = parse_list(p_list);
    const std::vector<double> hs = parse_list(h_list);
    if (ps.empty() || hs.empty()) {
        throw CLI::ValidationError("sweep", "empty p or h list");
    }
    std::ostringstream table;
    table << "p,h,h_star,verdict\n";
    for (double p : ps) {
        const double hstar = curves::h_star(p);
        for (double h : hs) {
            table << cliout::fmt17(p) << "," << cliout::fmt17(h) << ","
                  << cliout::fmt17(hstar) << ","
                  << (h < hstar ? "exists_unique" : "no_minimizer") << "\n";
        }
    }
    cliout::write_file(out + "/sweep.csv", table.str());
    write_manifest(out, json{{"subcommand", "sweep"},
                             {"p_list", p_list},
                             {"h_list", h_list}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Obstacle problem for the generalized p-elastic energy: "
                 "explicit curves, thresholds, solves, diagnostics"};
    app.require_subcommand(1);

    // curve
    auto* c_curve = app.add_subcommand(
        "curve", "Sample the explicit free elastica curve and the limit "
                 "profile U_0");
    double cp_p = 2.0, cp_lambda = 1.0;
    int cp_samples = 512;
    std::string cp_out = "out", cp_format = "csv";
    c_curve->add_option("--p", cp_p, "exponent p > 1")->required();
    c_curve->add_option("--lambda", cp_lambda, "scale parameter lambda > 0");
    c_curve->add_option("--samples", cp_samples, "number of arc-length cells");
    c_curve->add_option("--out", cp_out, "output directory");
    c_curve->add_option("--format", cp_format)
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    // solve
    auto* c_solve = app.add_subcommand(
        "solve", "Minimize the energy over graphs above a cone obstacle");
    SolveArgs sa;
    std::string solve_config;
    c_solve->add_option("--p", sa.p, "exponent p > 1");
    c_solve->add_option("--height", sa.height, "cone tip height");
    c_solve->add_option("--theta", sa.theta, "cone tip abscissa in (0,1)");
    c_solve->add_option("--endpoint", sa.endpoint, "psi(0) = psi(1) < 0");
    c_solve->add_option("--grid", sa.N, "number of grid cells");
    c_solve->add_option("--tol", sa.tol, "target KKT residual");
    c_solve->add_option("--max-iter", sa.max_iter,
                        "projected-gradient iterations per stage");
    c_solve->add_flag("--symmetric", sa.symmetric,
                      "minimize over the symmetric class");
    c_solve->add_flag("--with-exact", sa.with_exact,
                      "also write the semi-analytic cone minimizer and gap");
    c_solve->add_flag("--force", sa.force,
                      "attempt the solve even above the threshold");
    c_solve->add_option("--out", sa.out, "output directory");
    c_solve->add_option("--format", sa.format)
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    c_solve->add_option("--config", solve_config, "flat key=value config file");

    // threshold
    auto* c_thr = app.add_subcommand(
        "threshold", "Sharp existence threshold and endpoint constants");
    double th_p = 2.0;
    std::string th_out = "out";
    c_thr->add_option("--p", th_p)->required();
    c_thr->add_option("--out", th_out);

    // hbound
    auto* c_hb = app.add_subcommand(
        "hbound", "Sup-norm bound kernel H(A) sweep with the analytic limit");
    double hb_p = 2.0, hb_amin = 1e-3, hb_amax = 1e4;
    int hb_num = 41;
    std::string hb_out = "out";
    c_hb->add_option("--p", hb_p)->required();
    c_hb->add_option("--A-min", hb_amin);
    c_hb->add_option("--A-max", hb_amax);
    c_hb->add_option("--num", hb_num);
    c_hb->add_option("--out", hb_out);

    // sweep
    auto* c_sw = app.add_subcommand(
        "sweep", "Existence-verdict matrix over (p, h) lists");
    std::string sw_p = "2", sw_h = "0.5", sw_out = "out";
    c_sw->add_option("--p-list", sw_p, "comma-separated p values");
    c_sw->add_option("--h-list", sw_h, "comma-separated tip heights");
    c_sw->add_option("--out", sw_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*c_curve) {
            if (cp_samples <= 0 || !(cp_p > 1.0) || !(cp_lambda > 0.0)) {
                std::cerr << "error: samples must be positive, p > 1, lambda > 0\n";
                return kExitConfig;
            }
            return run_curve(cp_p, cp_lambda, cp_samples, cp_out, cp_format);
        }
        if (*c_solve) {
            if (!solve_config.empty()) {
                apply_config(sa, parse_config_file(solve_config), c_solve);
            }
            if (!(sa.p > 1.0) || sa.N < 16 || !(sa.tol > 0.0)) {
                std::cerr << "error: need p > 1, grid >= 16, tol > 0\n";
                return kExitConfig;
            }
            return run_solve(sa);
        }
        if (*c_thr) return run_threshold(th_p, th_out);
        if (*c_hb) return run_hbound(hb_p, hb_amin, hb_amax, hb_num, hb_out);
        if (*c_sw) return run_sweep(sw_p, sw_h, sw_out);
    } catch (const solver::AssumptionError& e) {
        std::cerr << "assumption violated: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const curves::NoMinimizerError& e) {
        std::cerr << "no minimizer: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
