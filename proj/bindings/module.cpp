#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pelastica/curves.hpp"
#include "pelastica/diagnostics.hpp"
#include "pelastica/energy.hpp"
#include "pelastica/gentrig.hpp"
#include "pelastica/rearrange.hpp"
#include "pelastica/shape.hpp"
#include "pelastica/solver.hpp"

namespace py = pybind11;
using namespace pelastica;

namespace {

solver::Obstacle make_obstacle(const std::string& kind, double h, double x_tip,
                               double end0, double end1,
                               const std::vector<double>& values) {
    if (kind == "symmetric_cone") return solver::Obstacle::symmetric_cone(h, end0);
    if (kind == "cone") return solver::Obstacle::cone(x_tip, h, end0, end1);
    if (kind == "sampled") return solver::Obstacle::sampled(values);
    throw std::invalid_argument("obstacle kind must be symmetric_cone, cone or sampled");
}

}  // namespace

PYBIND11_MODULE(_pelastica, m) {
    m.doc() = "Obstacle problem for the p-elastic energy of graphs: "
              "generalized trigonometric functions, free elastica curves, "
              "sharp existence thresholds, solver and diagnostics.";

    py::register_exception<solver::AssumptionError>(m, "AssumptionError");
    py::register_exception<curves::NoMinimizerError>(m, "NoMinimizerError");

    // Generalized trigonometric functions.
    m.def("pi_gen", [](double q, double r) {
        return gentrig::pi_gen(gentrig::Params(q, r));
    }, py::arg("q"), py::arg("r"));
    m.def("sin_gen", [](double q, double r, double x) {
        return gentrig::sin_gen(gentrig::Params(q, r), x);
    }, py::arg("q"), py::arg("r"), py::arg("x"));
    m.def("cos_gen", [](double q, double r, double x) {
        return gentrig::cos_gen(gentrig::Params(q, r), x);
    }, py::arg("q"), py::arg("r"), py::arg("x"));
    m.def("asin_gen", [](double q, double r, double x) {
        return gentrig::asin_gen(gentrig::Params(q, r), x);
    }, py::arg("q"), py::arg("r"), py::arg("x"));

    // Shape function constants and thresholds.
    m.def("c_p", [](double p) { return eu_p_shape(p).c_p; }, py::arg("p"));
    m.def("h_star", &curves::h_star, py::arg("p"));
    m.def("endpoint_constants", &curves::endpoint_constants, py::arg("p"));
    m.def("comparison_uc", [](double p, double c, double x) {
        return curves::comparison_uc(eu_p_shape(p), c, x);
    }, py::arg("p"), py::arg("c"), py::arg("x"));
    m.def("profile_U0", [](double p, double x) {
        return curves::profile_U0(eu_p_shape(p), x);
    }, py::arg("p"), py::arg("x"));

    // Free p-elastica curves.
    py::class_<curves::PElastica>(m, "PElastica")
        .def(py::init<double, double>(), py::arg("p"), py::arg("lam"))
        .def_property_readonly("p", &curves::PElastica::p)
        .def_property_readonly("lam", &curves::PElastica::lambda)
        .def_property_readonly("half_period", &curves::PElastica::half_period)
        .def("omega", &curves::PElastica::omega, py::arg("s"))
        .def("curvature", &curves::PElastica::curvature, py::arg("s"))
        .def("gamma", &curves::PElastica::gamma, py::arg("s"))
        .def("tangent_angle", &curves::PElastica::tangent_angle, py::arg("s"))
        .def("sample", [](const curves::PElastica& c, int n) {
            const auto s = c.sample(n);
            py::dict d;
            d["s"] = s.s;
            d["X"] = s.X;
            d["Y"] = s.Y;
            d["k"] = s.k;
            d["theta"] = s.theta;
            d["tan_pw"] = s.tan_pw;
            return d;
        }, py::arg("n"));

    m.def("exact_cone_minimizer", [](double p, double h, int N) {
        const auto cm = curves::exact_cone_minimizer(p, h, N);
        py::dict d;
        d["p"] = cm.p;
        d["h"] = cm.h;
        d["s_star"] = cm.s_star;
        d["theta_u"] = cm.theta_u;
        d["lambda_u"] = cm.lambda_u;
        d["energy"] = cm.energy;
        d["u"] = cm.u.u;
        return d;
    }, py::arg("p"), py::arg("h"), py::arg("N") = 1024);

    // Discrete energy.
    m.def("energy_discrete", [](double p, const std::vector<double>& u) {
        const int N = static_cast<int>(u.size()) - 1;
        return energy::energy_discrete(eu_p_shape(p), p, GridFunction(N, u));
    }, py::arg("p"), py::arg("u"));

    // Obstacle solve.
    m.def("minimize", [](double p, const std::string& kind, double h,
                         double x_tip, double end0, double end1,
                         const std::vector<double>& values, int N, double tol,
                         bool symmetric, int max_iter) {
        const auto psi = make_obstacle(kind, h, x_tip, end0, end1, values);
        solver::SolveOptions opts;
        opts.N = N;
        opts.tol = tol;
        opts.symmetric = symmetric;
        opts.max_iter = max_iter;
        const auto rep = solver::minimize(eu_p_shape(p), p, psi, opts);
        py::dict d;
        d["u"] = rep.minimizer.u;
        d["energy"] = rep.energy;
        d["kkt_residual"] = rep.kkt_residual;
        d["iterations"] = rep.iterations;
        d["converged"] = rep.converged;
        d["coincidence_nodes"] = rep.coincidence_nodes;
        d["verdict"] = rep.verdict;
        d["h_star"] = rep.h_star_value;
        d["c_p"] = rep.c_p_value;
        d["message"] = rep.message;
        return d;
    }, py::arg("p"), py::arg("kind") = "symmetric_cone", py::arg("h") = 0.4,
       py::arg("x_tip") = 0.5, py::arg("end0") = -1.0, py::arg("end1") = -1.0,
       py::arg("values") = std::vector<double>{}, py::arg("N") = 512,
       py::arg("tol") = 1e-6, py::arg("symmetric") = true,
       py::arg("max_iter") = 1000);

    m.def("threshold_verdict", [](double p, double h) {
        const auto v = solver::threshold_verdict(
            p, solver::Obstacle::symmetric_cone(h));
        py::dict d;
        d["exists_unique"] = v.verdict == solver::Verdict::ExistsUnique;
        d["h"] = v.h;
        d["h_star"] = v.h_star;
        return d;
    }, py::arg("p"), py::arg("h"));

    m.def("nonexistence_H", [](double p, double A) {
        return solver::nonexistence_H(eu_p_shape(p), p, A);
    }, py::arg("p"), py::arg("A"));
    m.def("nonexistence_bound", [](double p) {
        return solver::nonexistence_bound(eu_p_shape(p), p);
    }, py::arg("p"));

    // Diagnostics on nodal values.
    m.def("diagnostics_json", [](double p, const std::vector<double>& u,
                                 const std::vector<double>& psi) {
        const int N = static_cast<int>(u.size()) - 1;
        return diagnostics::to_json(
            diagnostics::run_all(eu_p_shape(p), p, GridFunction(N, u), psi));
    }, py::arg("p"), py::arg("u"), py::arg("psi"));

    // Symmetric decreasing rearrangement of a computed minimizer.
    m.def("rearrange_minimizer", [](double p, const std::vector<double>& u) {
        const int N = static_cast<int>(u.size()) - 1;
        const auto r = rearrange::rearrange_minimizer(eu_p_shape(p), p,
                                                      GridFunction(N, u));
        py::dict d;
        d["f_star"] = r.f_star;
        d["v"] = r.v.u;
        d["energy_residual"] = r.energy_residual;
        d["symmetric"] = r.symmetric;
        return d;
    }, py::arg("p"), py::arg("u"));
}
