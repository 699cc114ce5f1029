// Command line front end: every operation of the library is reachable as a
// subcommand working off a JSON config, emitting deterministic CSV/JSON
// artifacts (no timestamps, stable key order, atomic writes).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "halfriesz/analysis.hpp"
#include "halfriesz/config.hpp"
#include "halfriesz/exact_solutions.hpp"
#include "halfriesz/picard.hpp"
#include "halfriesz/radial_ops.hpp"
#include "halfriesz/special.hpp"

using njson = nlohmann::ordered_json;
using namespace halfriesz;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfigInvalid = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

njson finite_or_string(double x) {
    if (std::isfinite(x)) return x;
    return x > 0 ? "inf" : "-inf";
}

njson params_json(const ProblemParams& p) {
    njson j;
    j["N"] = p.N;
    j["k"] = p.k;
    j["p"] = p.p;
    j["lambda"] = p.lambda;
    return j;
}

njson report_json(const IterationReport& rep) {
    njson j;
    j["status"] = to_string(rep.status);
    j["iterations"] = rep.iterations;
    j["final_residual"] = finite_or_string(rep.final_residual);
    j["envelope_A"] = rep.envelope_A;
    j["envelope_M"] = rep.envelope_M;
    j["envelope_ok"] = rep.envelope_ok;
    j["monotone_ok"] = rep.monotone_ok;
    j["sup_value"] = finite_or_string(rep.sup_value);
    j["detail"] = rep.detail;
    njson hist = njson::array();
    for (double r : rep.residual_history) hist.push_back(finite_or_string(r));
    j["residual_history"] = std::move(hist);
    return j;
}

void emit(const std::string& out_dir, const std::string& name, const njson& j) {
    write_file_atomic(out_dir + "/" + name, j.dump(2) + "\n");
}

std::vector<double> log_samples(double lo, double hi, int n) {
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i)
        s[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return s;
}

// ---- exponents -------------------------------------------------------------

int cmd_exponents(const ExperimentConfig& cfg, const std::string& out_dir) {
    njson j;
    j["params"] = params_json(cfg.params);
    const Regime regime = classify_regime(cfg.params);
    j["regime"] = to_string(regime.tag);
    j["regular"] = to_string(regime.regular);
    if (cfg.params.k > 1.0) {
        const auto ce = critical_exponents(cfg.params);
        j["p_star"] = ce.p_star;
        j["p_star_star"] = ce.p_star_star;
    } else {
        j["p_star"] = nullptr;
        j["p_star_star"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
    emit(out_dir, "exponents.json", j);
    return kExitPass;
}

// ---- verify ----------------------------------------------------------------

// direct quadrature of the composition left side at separation `sep`
double composition_lhs(int N, double a, double b, double sep, double tol) {
    const int d = N - 1;
    const auto grid = RadialGrid::geometric(1e-5, 1e5, 201);
    const RadialFn power = RadialFn::pure_power(grid, 1.0, b);
    return riesz_apply_at(power, a, d, sep, tol);
}

int verify_composition(const ExperimentConfig& cfg, njson& j) {
    const int N = cfg.params.N;
    const std::vector<std::pair<double, double>> windows{{0.5, 1.5}, {1.0, 1.5}, {1.0, 1.9}};
    const std::vector<double> seps{0.5, 1.0, 2.0};
    const double rel_tol = 5e-3;
    j["tolerances"]["rel"] = rel_tol;
    bool pass = true;
    njson table = njson::array();
    for (auto [a, b] : windows) {
        const double closed = riesz_composition_constant(N, a, b).value;
        for (double sep : seps) {
            const double lhs = composition_lhs(N, a, b, sep, cfg.quad_tol);
            const double expected = closed * std::pow(sep, -(b - a));
            const double rel = std::abs(lhs - expected) / expected;
            pass = pass && rel <= rel_tol;
            njson row;
            row["a"] = a;
            row["b"] = b;
            row["separation"] = sep;
            row["closed_form"] = expected;
            row["quadrature"] = lhs;
            row["rel_err"] = rel;
            table.push_back(std::move(row));
        }
    }
    j["metrics"]["table"] = std::move(table);
    return pass ? kExitPass : kExitVerifyFail;
}

int verify_exact(const ExperimentConfig& cfg, njson& j) {
    const auto sol = build_exact_solution(cfg.params);
    j["metrics"]["trace_coeff"] = sol.trace_coeff;
    j["metrics"]["trace_exponent"] = sol.trace_exponent;
    const auto grid = RadialGrid::geometric(1e-4, 1e4, 201);
    const RadialFn trace = sol.trace(grid);
    auto rep = fixed_point_residual(trace, cfg.params, log_samples(0.1, 10.0, 13), cfg.quad_tol);
    j["metrics"]["sup_rel_residual"] = rep.sup_rel_residual;
    j["tolerances"]["residual"] = 1e-3;
    return rep.sup_rel_residual <= 1e-3 ? kExitPass : kExitVerifyFail;
}

int verify_bubble(const ExperimentConfig& cfg, njson& j) {
    const auto bub = build_bubble(cfg.params, 1.0, 0.0, cfg.quad_tol);
    j["metrics"]["trace_coeff"] = bub.trace_coeff;
    const auto grid = RadialGrid::geometric(1e-4, 1e4, 201);
    const RadialFn trace = bub.trace(grid);
    auto samples = log_samples(0.01, 10.0, 12);
    samples.insert(samples.begin(), 0.0);
    auto rep = fixed_point_residual(trace, cfg.params, samples, cfg.quad_tol);
    j["metrics"]["sup_rel_residual"] = rep.sup_rel_residual;

    // scale covariance: the collocated constant is t-independent and the
    // trace obeys v_t(r) = t^{-(k-1)/2} v_1(r/t)
    const auto bub2 = build_bubble(cfg.params, 2.0, 0.0, cfg.quad_tol);
    const double c_dev = std::abs(bub2.trace_coeff / bub.trace_coeff - 1.0);
    double formula_dev = 0.0;
    const double e = (cfg.params.k - 1.0) / 2.0;
    for (double r : {0.0, 0.3, 1.0, 4.0}) {
        const double lhs = bub2.trace_value(r);
        const double rhs = std::pow(2.0, -e) * bub.trace_value(r / 2.0);
        formula_dev = std::max(formula_dev, std::abs(lhs / rhs - 1.0));
    }
    j["metrics"]["t_scaling_coeff_dev"] = c_dev;
    j["metrics"]["t_scaling_formula_dev"] = formula_dev;
    j["tolerances"]["residual"] = 1e-3;
    j["tolerances"]["t_scaling"] = 1e-6;
    const bool pass =
        rep.sup_rel_residual <= 1e-3 && c_dev <= 1e-6 && formula_dev <= 1e-6;
    return pass ? kExitPass : kExitVerifyFail;
}

int verify_estimates(const ExperimentConfig& cfg, njson& j) {
    const int N = cfg.params.N;
    const double k = cfg.params.k;
    const double beta = cfg.params.p * (k - 1.0);
    bool pass = true;

    njson s1;
    try {
        const auto ygrid = RadialGrid::geometric(1e-2, 1e2, 33);
        const auto coarse = verify_estimate_stan1(k, beta, N, ygrid, cfg.quad_tol);
        const auto fine = verify_estimate_stan1(k, beta, N, ygrid.refined(), cfg.quad_tol);
        const double change = std::abs(fine.sup_ratio / coarse.sup_ratio - 1.0);
        s1["sup_ratio"] = coarse.sup_ratio;
        s1["refined_sup_ratio"] = fine.sup_ratio;
        s1["refinement_change"] = change;
        s1["pass"] = std::isfinite(coarse.sup_ratio) && change <= 0.10;
        pass = pass && s1["pass"].get<bool>();
    } catch (const std::exception& e) {
        s1["pass"] = false;
        s1["error"] = e.what();
        pass = false;
    }
    j["metrics"]["kernel_weight_bound"] = std::move(s1);

    njson s6;
    try {
        std::vector<std::pair<double, double>> samples;
        for (double t : log_samples(1e-2, 1e3, 21)) {
            samples.push_back({t, 0.0});
            samples.push_back({t / std::sqrt(2.0), t / std::sqrt(2.0)});
            samples.push_back({0.0, t});
        }
        const auto coarse = verify_estimate_stan6(k, N, samples, cfg.quad_tol);
        // refinement here doubles the sample density
        std::vector<std::pair<double, double>> dense;
        for (double t : log_samples(1e-2, 1e3, 41)) {
            dense.push_back({t, 0.0});
            dense.push_back({t / std::sqrt(2.0), t / std::sqrt(2.0)});
            dense.push_back({0.0, t});
        }
        const auto fine = verify_estimate_stan6(k, N, dense, cfg.quad_tol);
        const double change = std::abs(fine.sup_ratio / coarse.sup_ratio - 1.0);
        s6["sup_ratio"] = coarse.sup_ratio;
        s6["refined_sup_ratio"] = fine.sup_ratio;
        s6["refinement_change"] = change;
        s6["pass"] = std::isfinite(coarse.sup_ratio) && change <= 0.10;
        pass = pass && s6["pass"].get<bool>();
    } catch (const std::exception& e) {
        s6["pass"] = false;
        s6["error"] = e.what();
        pass = false;
    }
    j["metrics"]["lifted_weight_bound"] = std::move(s6);
    j["tolerances"]["refinement_change"] = 0.10;
    return pass ? kExitPass : kExitVerifyFail;
}

int verify_holder(const ExperimentConfig& cfg, njson& j) {
    const int N = cfg.params.N;
    const double alpha = 1.0, q = 4.0;
    const auto grid = RadialGrid::geometric(1e-3, 1e3, 121);
    const RadialFn bump =
        RadialFn::from_function(grid, [](double s) { return std::pow(1.0 + s, -3.0); });
    const auto pairs = holder_pair_ladder({1.0, 0.0}, 10.0, 4, 2);
    const auto rep = holder_check(bump, alpha, q, N, pairs, cfg.quad_tol);
    j["metrics"]["gamma"] = rep.gamma;
    j["metrics"]["emp_const"] = rep.emp_const;
    j["metrics"]["emp_exponent"] = rep.emp_exponent;
    j["tolerances"]["exponent_slack"] = 0.05;
    const bool pass = std::isfinite(rep.emp_const) && rep.emp_exponent >= rep.gamma - 0.05;
    return pass ? kExitPass : kExitVerifyFail;
}

int verify_hls(const ExperimentConfig& cfg, njson& j) {
    const int N = cfg.params.N;
    const double alpha = 1.0, s = 1.5;
    const auto grid = RadialGrid::geometric(1e-3, 1e3, 121);
    auto bump = [](double rho) {
        return [rho](double t) { return std::pow(1.0 + t / rho, -3.0); };
    };
    const RadialFn f = RadialFn::from_function(grid, bump(1.0));
    const double ratio = hls_check(f, s, alpha, N, cfg.quad_tol);
    double dev = 0.0;
    for (double rho : {0.5, 2.0}) {
        const RadialFn g = RadialFn::from_function(grid, bump(rho));
        dev = std::max(dev, std::abs(hls_check(g, s, alpha, N, cfg.quad_tol) / ratio - 1.0));
    }
    j["metrics"]["ratio"] = ratio;
    j["metrics"]["dilation_dev"] = dev;
    j["tolerances"]["dilation"] = 1e-2;
    const bool pass = std::isfinite(ratio) && ratio > 0.0 && dev <= 1e-2;
    return pass ? kExitPass : kExitVerifyFail;
}

int cmd_verify(const ExperimentConfig& cfg, const std::string& out_dir) {
    njson j;
    j["target"] = cfg.verify_target;
    j["params"] = params_json(cfg.params);
    j["metrics"] = njson::object();
    j["tolerances"] = njson::object();
    int rc;
    if (cfg.verify_target == "composition") rc = verify_composition(cfg, j);
    else if (cfg.verify_target == "exact") rc = verify_exact(cfg, j);
    else if (cfg.verify_target == "bubble") rc = verify_bubble(cfg, j);
    else if (cfg.verify_target == "estimates") rc = verify_estimates(cfg, j);
    else if (cfg.verify_target == "holder") rc = verify_holder(cfg, j);
    else if (cfg.verify_target == "hls") rc = verify_hls(cfg, j);
    else throw ConfigError({"verify.target must be one of composition|exact|bubble|estimates|"
                            "holder|hls, got \"" + cfg.verify_target + "\""});
    j["pass"] = (rc == kExitPass);
    std::cout << j.dump(2) << "\n";
    emit(out_dir, "verify_" + cfg.verify_target + ".json", j);
    return rc;
}

// ---- solve -----------------------------------------------------------------

int cmd_solve(const ExperimentConfig& cfg, const std::string& out_dir, int refine) {
    const auto grid = cfg.make_grid(refine);
    const auto rep = picard_iterate(cfg.measure, cfg.params, cfg.solver, grid);

    njson j;
    j["params"] = params_json(cfg.params);
    j["measure"] = {{"h", cfg.measure.h}, {"rho", cfg.measure.rho}, {"m", cfg.measure.m}};
    j["report"] = report_json(rep);
    emit(out_dir, "solve_report.json", j);
    std::cout << j.dump(2) << "\n";

    if (rep.status == SolveStatus::Converged) {
        std::ostringstream csv;
        csv << "r,v,envelope,u_nu\n";
        const auto& trace = *rep.trace;
        for (size_t i = 0; i < grid.size(); ++i) {
            const double r = grid.nodes[i];
            csv << fmt(r) << "," << fmt(trace.values()[i]) << ","
                << fmt(rep.envelope_M * std::pow(1.0 + r, 1.0 - cfg.params.k)) << ","
                << fmt(green_potential(cfg.measure, cfg.params.N, r, 0.0)) << "\n";
        }
        write_file_atomic(out_dir + "/trace.csv", csv.str());
        return kExitPass;
    }
    return kExitNumerical;
}

// ---- lambda-star -----------------------------------------------------------

int cmd_lambda_star(const ExperimentConfig& cfg, const std::string& out_dir, int refine) {
    const auto grid = cfg.make_grid(refine);
    njson j;
    j["params"] = params_json(cfg.params);
    try {
        const auto est = lambda_star_estimate(cfg.measure, cfg.params, cfg.solver, grid,
                                              cfg.ls_bracket_lo, cfg.ls_bracket_hi);
        j["lambda_hat"] = est.lambda_hat;
        j["bracket"] = {est.bracket_lo, est.bracket_hi};
        j["report_converged"] = report_json(est.report_lo);
        j["report_diverged"] = report_json(est.report_hi);
        std::cout << j.dump(2) << "\n";
        emit(out_dir, "lambda_star.json", j);
        return kExitPass;
    } catch (const std::runtime_error& e) {
        j["error"] = e.what();
        std::cout << j.dump(2) << "\n";
        emit(out_dir, "lambda_star.json", j);
        return kExitNumerical;
    }
}

// ---- bootstrap -------------------------------------------------------------

int cmd_bootstrap(const ExperimentConfig& cfg, const std::string& out_dir) {
    const auto tr = bootstrap_sequence(cfg.params, cfg.bootstrap_n_max);
    std::ostringstream csv;
    csv << "n,gamma,gamma_exact\n";
    for (size_t n = 0; n < tr.gamma.size(); ++n) {
        csv << n << "," << fmt(tr.gamma[n]) << ","
            << (n < tr.gamma_exact.size() ? tr.gamma_exact[n] : "") << "\n";
    }
    write_file_atomic(out_dir + "/bootstrap.csv", csv.str());

    njson j;
    j["params"] = params_json(cfg.params);
    j["verdict"] = to_string(tr.verdict);
    j["limit"] = to_string(tr.limit);
    if (tr.limit == BootstrapLimit::FiniteLimit || tr.limit == BootstrapLimit::StationaryAtStart)
        j["limit_value"] = tr.limit_value;
    j["exact_arithmetic"] = tr.exact_arithmetic;
    if (tr.stop_index) j["stop_index"] = *tr.stop_index;
    njson gam = njson::array();
    for (double g : tr.gamma) gam.push_back(g);
    j["gamma"] = std::move(gam);
    std::cout << j.dump(2) << "\n";
    emit(out_dir, "bootstrap.json", j);
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a nonlocal Neumann problem on the half space"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    long long seed_override = -1;
    int refine = 0;
    app.add_option("--config", config_path, "JSON config path")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed_override, "override config seed");
    app.add_option("--refine", refine, "grid doubling count")->check(CLI::NonNegativeNumber);

    auto* sub_exponents = app.add_subcommand("exponents", "critical exponents and regime");
    auto* sub_verify = app.add_subcommand("verify", "run a named verification");
    std::string target_flag;
    sub_verify->add_option("--target", target_flag,
                           "composition|exact|bubble|estimates|holder|hls");
    auto* sub_solve = app.add_subcommand("solve", "Picard iteration for the boundary trace");
    auto* sub_ls = app.add_subcommand("lambda-star", "bisect the convergence threshold");
    auto* sub_boot = app.add_subcommand("bootstrap", "descent recurrence certificate");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = ExperimentConfig::load(config_path);
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
        if (!target_flag.empty()) cfg.verify_target = target_flag;

        if (sub_exponents->parsed()) return cmd_exponents(cfg, out_dir);
        if (sub_verify->parsed()) return cmd_verify(cfg, out_dir);
        if (sub_solve->parsed()) return cmd_solve(cfg, out_dir, refine);
        if (sub_ls->parsed()) return cmd_lambda_star(cfg, out_dir, refine);
        if (sub_boot->parsed()) return cmd_bootstrap(cfg, out_dir);
        return kExitConfigInvalid;
    } catch (const ConfigError& e) {
        njson err;
        err["errors"] = e.violations;
        std::cerr << err.dump(2) << "\n";
        return kExitConfigInvalid;
    } catch (const quadrature_error& e) {
        njson err;
        err["errors"] = {std::string(e.what())};
        std::cerr << err.dump(2) << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        njson err;
        err["errors"] = {std::string(e.what())};
        std::cerr << err.dump(2) << "\n";
        return kExitConfigInvalid;
    } catch (const std::exception& e) {
        njson err;
        err["errors"] = {std::string(e.what())};
        std::cerr << err.dump(2) << "\n";
        return kExitNumerical;
    }
}
