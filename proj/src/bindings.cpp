// pybind11 bindings for the main operations; the python layer mirrors the
// C++ surface closely and adds nothing of its own.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halfriesz/analysis.hpp"
#include "halfriesz/angular.hpp"
#include "halfriesz/config.hpp"
#include "halfriesz/exact_solutions.hpp"
#include "halfriesz/mc_oracle.hpp"
#include "halfriesz/picard.hpp"
#include "halfriesz/radial_ops.hpp"
#include "halfriesz/special.hpp"

namespace py = pybind11;
using namespace halfriesz;

PYBIND11_MODULE(_halfriesz, m) {
    m.doc() = "nonlocal Neumann boundary problem laboratory (C++ core)";

    py::register_exception<quadrature_error>(m, "QuadratureError");

    py::class_<ProblemParams>(m, "ProblemParams")
        .def(py::init([](int N, double k, double p, double lam) {
                 ProblemParams P{N, k, p, lam};
                 P.validate();
                 return P;
             }),
             py::arg("N"), py::arg("k"), py::arg("p"), py::arg("lambda_") = 1.0)
        .def_readonly("N", &ProblemParams::N)
        .def_readonly("k", &ProblemParams::k)
        .def_readonly("p", &ProblemParams::p)
        .def_readonly("lambda_", &ProblemParams::lambda)
        .def("k_borderline", &ProblemParams::k_borderline);

    py::enum_<RegimeTag>(m, "RegimeTag")
        .value("NonexistenceKSmall", RegimeTag::NonexistenceKSmall)
        .value("NonexistenceSubcritical", RegimeTag::NonexistenceSubcritical)
        .value("CriticalPStarNoLpSolution", RegimeTag::CriticalPStarNoLpSolution)
        .value("ExistenceSupercritical", RegimeTag::ExistenceSupercritical);
    py::enum_<RegularFlag>(m, "RegularFlag")
        .value("NoRegular", RegularFlag::NoRegular)
        .value("RegularCriticalBubbles", RegularFlag::RegularCriticalBubbles)
        .value("RegularExists", RegularFlag::RegularExists);
    py::class_<Regime>(m, "Regime")
        .def_readonly("tag", &Regime::tag)
        .def_readonly("regular", &Regime::regular);

    m.def("critical_exponents", [](const ProblemParams& P) {
        const auto ce = critical_exponents(P);
        return py::make_tuple(ce.p_star, ce.p_star_star);
    });
    m.def("classify_regime", &classify_regime);

    m.def("gamma_fn", &gamma_fn);
    m.def("sphere_area", &sphere_area);
    m.def("fundamental_solution_radius", &fundamental_solution_radius);
    m.def("neumann_green", [](int N, std::vector<double> x, std::vector<double> y) {
        return neumann_green(N, x, y);
    });
    m.def("riesz_composition_constant",
          [](int N, double a, double b) { return riesz_composition_constant(N, a, b).value; });
    m.def("angular_kernel", &angular_kernel, py::arg("d"), py::arg("beta"), py::arg("r"),
          py::arg("s"), py::arg("lift_height") = 0.0);

    py::class_<RadialGrid>(m, "RadialGrid")
        .def_static("geometric", &RadialGrid::geometric)
        .def("refined", &RadialGrid::refined)
        .def_readonly("nodes", &RadialGrid::nodes)
        .def_readonly("r_min", &RadialGrid::r_min)
        .def_readonly("r_max", &RadialGrid::r_max);

    py::class_<PowerLaw>(m, "PowerLaw")
        .def(py::init<double, double>(), py::arg("coeff"), py::arg("exponent"))
        .def_readonly("coeff", &PowerLaw::coeff)
        .def_readonly("exponent", &PowerLaw::exponent);

    py::class_<RadialFn>(m, "RadialFn")
        .def_static("from_function",
                    [](const RadialGrid& g, const std::function<double(double)>& f) {
                        return RadialFn::from_function(g, f);
                    })
        .def_static("pure_power", &RadialFn::pure_power)
        .def_static("zero", &RadialFn::zero)
        .def("__call__", &RadialFn::operator())
        .def_property_readonly("values", &RadialFn::values)
        .def_property_readonly("tail", &RadialFn::tail)
        .def_property_readonly("origin", &RadialFn::origin)
        .def("pow", &RadialFn::pow)
        .def("scaled", &RadialFn::scaled);

    m.def("riesz_potential_radial", &riesz_potential_radial, py::arg("v"), py::arg("alpha"),
          py::arg("d"), py::arg("tol") = kDefaultQuadTol);
    m.def("riesz_apply_at", &riesz_apply_at, py::arg("v"), py::arg("alpha"), py::arg("d"),
          py::arg("r"), py::arg("tol") = kDefaultQuadTol);
    m.def("boundary_operator_H", &boundary_operator_H, py::arg("v"), py::arg("params"),
          py::arg("tol") = kDefaultQuadTol);
    m.def("lifting_J", &lifting_J, py::arg("f"), py::arg("alpha"), py::arg("N"),
          py::arg("r_prime"), py::arg("x_N"), py::arg("tol") = kDefaultQuadTol);
    m.def("composed_coupling", &composed_coupling);
    m.def("composed_trace_operator", &composed_trace_operator, py::arg("v"), py::arg("params"),
          py::arg("tol") = kDefaultQuadTol);
    m.def("composed_trace_at", &composed_trace_at, py::arg("v"), py::arg("params"), py::arg("r"),
          py::arg("tol") = kDefaultQuadTol);
    m.def("truncated_kernel_KR", &truncated_kernel_KR, py::arg("r_x"), py::arg("r_z"),
          py::arg("R"), py::arg("params"), py::arg("tol") = kNestedQuadTol);

    py::class_<ExactSolution>(m, "ExactSolution")
        .def_readonly("trace_coeff", &ExactSolution::trace_coeff)
        .def_readonly("trace_exponent", &ExactSolution::trace_exponent)
        .def_readonly("interior_coeff", &ExactSolution::interior_coeff)
        .def("trace", &ExactSolution::trace);
    py::class_<BubbleSolution>(m, "BubbleSolution")
        .def_readonly("t", &BubbleSolution::t)
        .def_readonly("trace_coeff", &BubbleSolution::trace_coeff)
        .def("trace_value", &BubbleSolution::trace_value)
        .def("trace", &BubbleSolution::trace);
    m.def("build_exact_solution", &build_exact_solution);
    m.def("exact_interior", &exact_interior, py::arg("sol"), py::arg("r_prime"), py::arg("x_N"),
          py::arg("tol") = kDefaultQuadTol);
    m.def("build_bubble", &build_bubble, py::arg("params"), py::arg("t"),
          py::arg("zeta_offset") = 0.0, py::arg("tol") = kDefaultQuadTol);
    m.def("fixed_point_residual",
          [](const RadialFn& v, const ProblemParams& P, std::vector<double> samples,
             double tol) {
              const auto rep = fixed_point_residual(v, P, std::move(samples), tol);
              return py::make_tuple(rep.sup_rel_residual, rep.per_point);
          },
          py::arg("v"), py::arg("params"), py::arg("r_samples"),
          py::arg("tol") = kDefaultQuadTol);

    py::enum_<BootstrapVerdict>(m, "BootstrapVerdict")
        .value("CertifiedNonexistence", BootstrapVerdict::CertifiedNonexistence)
        .value("NoCertificate", BootstrapVerdict::NoCertificate)
        .value("Inconclusive", BootstrapVerdict::Inconclusive);
    py::class_<BootstrapTrace>(m, "BootstrapTrace")
        .def_readonly("gamma", &BootstrapTrace::gamma)
        .def_readonly("gamma_exact", &BootstrapTrace::gamma_exact)
        .def_readonly("exact_arithmetic", &BootstrapTrace::exact_arithmetic)
        .def_readonly("verdict", &BootstrapTrace::verdict)
        .def_property_readonly("stop_index", [](const BootstrapTrace& t) {
            return t.stop_index ? py::cast(*t.stop_index) : py::none().cast<py::object>();
        });
    m.def("bootstrap_sequence", &bootstrap_sequence, py::arg("params"), py::arg("n_max") = 64);

    py::class_<SphereMeasure>(m, "SphereMeasure")
        .def(py::init([](double h, double rho, double mass) {
                 SphereMeasure s{h, rho, mass};
                 s.validate();
                 return s;
             }),
             py::arg("h"), py::arg("rho"), py::arg("m"))
        .def_readonly("h", &SphereMeasure::h)
        .def_readonly("rho", &SphereMeasure::rho)
        .def_readonly("m", &SphereMeasure::m);
    m.def("newtonian_potential_sphere", &newtonian_potential_sphere);
    m.def("green_potential", &green_potential);
    m.def("check_munu_bound", &check_munu_bound);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("R", &SolverConfig::R)
        .def_readwrite("envelope_factor", &SolverConfig::envelope_factor)
        .def_readwrite("tol", &SolverConfig::tol)
        .def_readwrite("max_iter", &SolverConfig::max_iter)
        .def_readwrite("blowup_threshold", &SolverConfig::blowup_threshold);
    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("Converged", SolveStatus::Converged)
        .value("Diverged", SolveStatus::Diverged)
        .value("Stalled", SolveStatus::Stalled);
    py::class_<IterationReport>(m, "IterationReport")
        .def_readonly("status", &IterationReport::status)
        .def_readonly("iterations", &IterationReport::iterations)
        .def_readonly("final_residual", &IterationReport::final_residual)
        .def_readonly("residual_history", &IterationReport::residual_history)
        .def_readonly("envelope_ok", &IterationReport::envelope_ok)
        .def_readonly("monotone_ok", &IterationReport::monotone_ok)
        .def_readonly("envelope_A", &IterationReport::envelope_A)
        .def_readonly("envelope_M", &IterationReport::envelope_M)
        .def_property_readonly("trace", [](const IterationReport& r) {
            return r.trace ? py::cast(*r.trace) : py::none().cast<py::object>();
        });
    m.def("picard_iterate", &picard_iterate);
    m.def("T_operator", &T_operator);
    m.def("lambda_star_estimate",
          [](const SphereMeasure& meas, const ProblemParams& P, const SolverConfig& cfg,
             const RadialGrid& grid, double lo, double hi) {
              const auto est = lambda_star_estimate(meas, P, cfg, grid, lo, hi);
              return py::make_tuple(est.lambda_hat, est.bracket_lo, est.bracket_hi);
          });
    m.def("reconstruct_interior", &reconstruct_interior, py::arg("trace"), py::arg("meas"),
          py::arg("params"), py::arg("r_prime"), py::arg("x_N"),
          py::arg("tol") = kDefaultQuadTol);

    m.def("mc_integral_oracle",
          [](const std::function<double(std::vector<double>)>& f, const McDomain& dom,
             std::int64_t samples, std::uint64_t seed) {
              auto wrapped = [&](std::span<const double> x) {
                  return f(std::vector<double>(x.begin(), x.end()));
              };
              const auto r = mc_integral_oracle(wrapped, dom, samples, seed);
              return py::make_tuple(r.estimate, r.stderr_est);
          });
    py::class_<McDomain>(m, "McDomain")
        .def_static("ball", &McDomain::ball, py::arg("center"), py::arg("radius"),
                    py::arg("radial_exponent") = 0.0)
        .def_static("annulus", &McDomain::annulus, py::arg("center"), py::arg("r_inner"),
                    py::arg("r_outer"), py::arg("radial_exponent") = 0.0)
        .def_static("sphere", &McDomain::sphere, py::arg("center"), py::arg("radius"));

    m.def("verify_estimate_stan1",
          [](double k, double beta, int N, const RadialGrid& g, double tol) {
              const auto r = verify_estimate_stan1(k, beta, N, g, tol);
              return py::make_tuple(r.sup_ratio, r.argmax);
          },
          py::arg("k"), py::arg("beta"), py::arg("N"), py::arg("y_grid"),
          py::arg("tol") = kDefaultQuadTol);
    m.def("hls_check", &hls_check, py::arg("f"), py::arg("s"), py::arg("alpha"), py::arg("N"),
          py::arg("tol") = kDefaultQuadTol);
}
