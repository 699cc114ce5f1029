// Acceptance suite: one checkable criterion per --criterion index, a single
// [PASS]/[FAIL] line each, nonzero exit on failure.  Criterion 10 drives the
// installed CLI binary end to end and byte-compares reruns.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "halfriesz/analysis.hpp"
#include "halfriesz/config.hpp"
#include "halfriesz/exact_solutions.hpp"
#include "halfriesz/picard.hpp"
#include "halfriesz/radial_ops.hpp"
#include "halfriesz/special.hpp"

using namespace halfriesz;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("[%s] C%d %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    if (!pass) ++g_failures;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

std::vector<double> log_samples(double lo, double hi, int n) {
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return s;
}

const ProblemParams kRef{3, 2.0, 4.0, 1.0};
const ProblemParams kRefSolver{3, 2.0, 4.0, 1e-3};
const SphereMeasure kMeas{1.0, 0.25, 1.0};

// --- C1: composition identity against direct quadrature ---------------------
void criterion1() {
    const std::vector<std::pair<double, double>> windows{{0.5, 1.5}, {1.0, 1.5}, {1.0, 1.9}};
    const auto grid = RadialGrid::geometric(1e-5, 1e5, 201);
    double worst = 0.0;
    for (auto [a, b] : windows) {
        const double closed = riesz_composition_constant(3, a, b).value;
        const RadialFn power = RadialFn::pure_power(grid, 1.0, b);
        for (double sep : {0.5, 1.0, 2.0}) {
            const double lhs = riesz_apply_at(power, a, 2, sep, 1e-9);
            const double expected = closed * std::pow(sep, -(b - a));
            worst = std::max(worst, std::abs(lhs - expected) / expected);
        }
    }
    report(1, worst <= 5e-3,
           "composition identity, 3 windows x 3 separations: max rel err " + num(worst) +
               " (tol 5e-3)");
}

// --- C2: exact supercritical fixed point ------------------------------------
void criterion2() {
    const auto sol = build_exact_solution(kRef);
    const bool tau_ok = sol.trace_exponent == 1.0 / 3.0;
    const auto grid = RadialGrid::geometric(1e-5, 1e5, 481);
    const auto rep = fixed_point_residual(sol.trace(grid), kRef, log_samples(0.1, 10.0, 13));
    report(2, tau_ok && rep.sup_rel_residual <= 1e-3,
           "exact solution: tau=" + num(sol.trace_exponent) + " (exact 1/3), residual " +
               num(rep.sup_rel_residual) + " on [0.1,10] (tol 1e-3)");
}

// --- C3: critical bubble fixed point + scale covariance ---------------------
void criterion3() {
    const ProblemParams crit{3, 2.0, 3.0, 1.0};
    const auto bub = build_bubble(crit, 1.0);
    const auto grid = RadialGrid::geometric(1e-5, 1e5, 481);
    auto samples = log_samples(0.01, 10.0, 12);
    samples.insert(samples.begin(), 0.0);
    const auto rep = fixed_point_residual(bub.trace(grid), crit, samples);

    const auto bub2 = build_bubble(crit, 2.0);
    double scale_dev = std::abs(bub2.trace_coeff / bub.trace_coeff - 1.0);
    const double e = (crit.k - 1.0) / 2.0;
    for (double r : {0.0, 0.3, 1.0, 4.0}) {
        const double lhs = bub2.trace_value(r);
        const double rhs = std::pow(2.0, -e) * bub.trace_value(r / 2.0);
        scale_dev = std::max(scale_dev, std::abs(lhs / rhs - 1.0));
    }
    report(3, rep.sup_rel_residual <= 1e-3 && scale_dev <= 1e-6,
           "bubble at p**: residual " + num(rep.sup_rel_residual) +
               " on [0,10] (tol 1e-3), t-scaling dev " + num(scale_dev) + " (tol 1e-6)");
}

// --- C4: perturbed traces are rejected --------------------------------------
void criterion4() {
    const auto sol = build_exact_solution(kRef);
    const auto grid = RadialGrid::geometric(1e-5, 1e5, 481);
    const auto rep =
        fixed_point_residual(sol.trace(grid).scaled(1.1), kRef, {0.1, 0.5, 1.0, 2.0, 10.0});
    const double analytic = std::abs(1.0 - std::pow(1.1, kRef.p - 1.0)); // 0.331
    report(4, rep.sup_rel_residual >= 0.3,
           "non-solution detection: residual " + num(rep.sup_rel_residual) +
               " >= 0.3 (analytic " + num(analytic) + ")");
}

// --- C5: descent certificate --------------------------------------------------
void criterion5() {
    const auto tr = bootstrap_sequence({3, 2.0, 1.5, 1.0}, 64);
    const bool values_ok = tr.exact_arithmetic && tr.gamma.size() >= 3 && tr.gamma[0] == 1.0 &&
                           tr.gamma[1] == 0.5 && tr.gamma[2] == -0.25;
    const bool verdict_ok = tr.verdict == BootstrapVerdict::CertifiedNonexistence;
    const auto sup = bootstrap_sequence({3, 2.0, 4.0, 1.0}, 64);
    const bool no_cert = sup.verdict == BootstrapVerdict::NoCertificate;
    report(5, values_ok && verdict_ok && no_cert,
           "descent recurrence: gamma=[1,0.5,-0.25] exact, certificate at p=1.5, none at p=4");
}

// --- C6: weighted kernel estimates ------------------------------------------
void criterion6() {
    // The kernel-weight bound has hypothesis window 1 < k < N-1 < beta.  At
    // the requested point (N=3, k=2, beta=4) the kernel exponent equals the
    // boundary dimension, the integrand |y'-z'|^{-2} is not locally
    // integrable on R^2 and the left side is +infinity; the implementation
    // reports the window violation rather than fabricating a finite number.
    bool stan1_ok = false;
    std::string stan1_msg;
    try {
        const auto ygrid = RadialGrid::geometric(1e-2, 1e2, 33);
        const auto coarse = verify_estimate_stan1(2.0, 4.0, 3, ygrid);
        const auto fine = verify_estimate_stan1(2.0, 4.0, 3, ygrid.refined());
        const double change = std::abs(fine.sup_ratio / coarse.sup_ratio - 1.0);
        stan1_ok = std::isfinite(coarse.sup_ratio) && change <= 0.10;
        stan1_msg = "sup " + num(coarse.sup_ratio) + ", change " + num(change);
    } catch (const std::exception& e) {
        stan1_msg = std::string("divergent as stated: ") + e.what();
    }

    bool stan6_ok = false;
    std::string stan6_msg;
    {
        std::vector<std::pair<double, double>> samples, dense;
        for (double t : log_samples(1e-2, 1e3, 21)) {
            samples.push_back({t, 0.0});
            samples.push_back({0.0, t});
        }
        for (double t : log_samples(1e-2, 1e3, 41)) {
            dense.push_back({t, 0.0});
            dense.push_back({0.0, t});
        }
        const auto coarse = verify_estimate_stan6(2.0, 3, samples);
        const auto fine = verify_estimate_stan6(2.0, 3, dense);
        const double change = std::abs(fine.sup_ratio / coarse.sup_ratio - 1.0);
        stan6_ok = std::isfinite(coarse.sup_ratio) && change <= 0.10;
        stan6_msg = "sup " + num(coarse.sup_ratio) + ", change " + num(change);
    }

    // supplementary: the same machinery inside the hypothesis window
    std::string inside_msg;
    {
        const auto ygrid = RadialGrid::geometric(1e-2, 1e2, 17);
        const auto a = verify_estimate_stan1(1.5, 4.0, 3, ygrid);
        const auto b = verify_estimate_stan1(1.5, 4.0, 3, ygrid.refined());
        inside_msg = "in-window (k=1.5): sup " + num(a.sup_ratio) + ", change " +
                     num(std::abs(b.sup_ratio / a.sup_ratio - 1.0));
    }
    std::printf("       C6 kernel-weight bound at (k=2, beta=4): %s\n", stan1_msg.c_str());
    std::printf("       C6 lifted bound at k=2: %s\n", stan6_msg.c_str());
    std::printf("       C6 %s\n", inside_msg.c_str());
    report(6, stan1_ok && stan6_ok,
           "estimate bounds at N=3, k=2, beta=4 (kernel-weight half is divergent at the "
           "borderline; see notes)");
}

// --- C7: Hoelder exponent of the lifting ------------------------------------
void criterion7() {
    const auto grid = RadialGrid::geometric(1e-3, 1e3, 121);
    const RadialFn bump =
        RadialFn::from_function(grid, [](double s) { return std::pow(1.0 + s, -3.0); });
    const auto pairs = holder_pair_ladder({1.0, 0.0}, 10.0, 4, 2);
    const auto rep = holder_check(bump, 1.0, 4.0, 3, pairs);
    report(7, std::isfinite(rep.emp_const) && rep.emp_exponent >= 0.45,
           "Hoelder bound: empirical exponent " + num(rep.emp_exponent) +
               " >= 0.45 over a 4-decade ladder (gamma 0.5)");
}

// --- C8: constructive solver --------------------------------------------------
void criterion8() {
    SolverConfig cfg; // R = inf
    const auto grid = RadialGrid::geometric(1e-3, 1e3, 145);
    const auto rep = picard_iterate(kMeas, kRefSolver, cfg, grid);
    bool ok = rep.status == SolveStatus::Converged && rep.monotone_ok && rep.envelope_ok &&
              rep.final_residual <= 2.0 * cfg.tol;

    ProblemParams big = kRefSolver;
    big.lambda = 1e3;
    const auto rep_big = picard_iterate(kMeas, big, cfg, grid);
    ok = ok && rep_big.status == SolveStatus::Diverged;

    SolverConfig truncated;
    truncated.R = 64.0;
    const auto rep_t = picard_iterate(kMeas, kRefSolver, truncated, grid);
    double mismatch = 0.0;
    if (rep_t.status == SolveStatus::Converged && rep.trace) {
        for (double r : log_samples(0.1, 4.0, 9))
            mismatch = std::max(mismatch,
                                std::abs((*rep_t.trace)(r) / (*rep.trace)(r) - 1.0));
    } else {
        ok = false;
    }
    ok = ok && mismatch <= 0.05;
    report(8, ok,
           "solver: small coupling converged (defect " + num(rep.final_residual) +
               " <= 2e-8), monotone+envelope, large coupling diverged, truncated-vs-full "
               "mismatch " +
               num(mismatch) + " (tol 5%)");
}

// --- C9: boundary continuity of the reconstruction --------------------------
void criterion9() {
    SolverConfig cfg;
    const auto grid = RadialGrid::geometric(1e-3, 1e3, 145);
    const auto rep = picard_iterate(kMeas, kRefSolver, cfg, grid);
    if (rep.status != SolveStatus::Converged) {
        report(9, false, "boundary-trace consistency: solver did not converge");
        return;
    }
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
        const double u = reconstruct_interior(*rep.trace, kMeas, kRefSolver, r, 1e-3);
        worst = std::max(worst, std::abs(u - (*rep.trace)(r)) / (*rep.trace)(r));
    }
    report(9, worst <= 1e-2,
           "boundary-trace consistency at x_N=1e-3: max rel gap " + num(worst) + " (tol 1%)");
}

// --- C10: CLI determinism ----------------------------------------------------
struct CliEnv {
    std::string cli;
    fs::path workdir;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion10(const CliEnv& env) {
    if (env.cli.empty()) {
        report(10, false, "CLI determinism: --cli path not provided");
        return;
    }
    fs::remove_all(env.workdir);
    fs::create_directories(env.workdir);
    const auto config = env.workdir / "config.json";
    {
        std::ofstream out(config);
        out << R"({
  "params": {"N": 3, "k": 2.0, "p": 4.0, "lambda": 0.001},
  "measure": {"h": 1.0, "rho": 0.25, "m": 1.0},
  "solver": {"R": "inf", "tol": 1e-8, "max_iter": 100},
  "grid": {"r_min": 1e-3, "r_max": 1e3, "nodes": 97},
  "bootstrap": {"n_max": 64},
  "seed": 20240817
})";
    }
    const std::vector<std::string> commands{"exponents", "bootstrap", "solve",
                                            "verify --target exact"};
    bool ok = true;
    std::string detail;
    for (const auto& cmd : commands) {
        for (int run : {1, 2}) {
            const fs::path out = env.workdir / ("out" + std::to_string(run));
            std::ostringstream sh;
            sh << env.cli << " " << cmd << " --config " << config << " --out " << out
               << " --seed 20240817 > " << (out.string() + ".stdout") << " 2>&1";
            fs::create_directories(out);
            const int rc = std::system(sh.str().c_str());
            if (rc != 0) {
                ok = false;
                detail = cmd + " exited " + std::to_string(rc);
            }
        }
        if (!ok) break;
        // every artifact byte-identical across the two runs
        for (const auto& entry : fs::directory_iterator(env.workdir / "out1")) {
            const auto name = entry.path().filename();
            const auto other = env.workdir / "out2" / name;
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
                ok = false;
                detail = "artifact " + name.string() + " differs after " + cmd;
                break;
            }
        }
        const auto s1 = slurp(env.workdir / "out1.stdout");
        const auto s2 = slurp(env.workdir / "out2.stdout");
        if (s1 != s2) {
            ok = false;
            detail = "stdout differs for " + cmd;
        }
        if (!ok) break;
    }
    report(10, ok, ok ? "CLI determinism: byte-identical reruns for "
                        "exponents/bootstrap/solve/verify"
                      : "CLI determinism: " + detail);
}

} // namespace

int main(int argc, char** argv) {
    int criterion = 0; // 0 = all
    CliEnv env;
    env.workdir = fs::temp_directory_path() / "halfriesz_acceptance";
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i] ? argv[i] : "";
        auto next = [&]() -> std::string { return i + 1 < argc ? argv[++i] : ""; };
        if (arg == "--criterion") criterion = std::atoi(next().c_str());
        else if (arg == "--cli") env.cli = next();
        else if (arg == "--workdir") env.workdir = next();
    }

    auto run = [&](int c) {
        switch (c) {
            case 1: criterion1(); break;
            case 2: criterion2(); break;
            case 3: criterion3(); break;
            case 4: criterion4(); break;
            case 5: criterion5(); break;
            case 6: criterion6(); break;
            case 7: criterion7(); break;
            case 8: criterion8(); break;
            case 9: criterion9(); break;
            case 10: criterion10(env); break;
            default:
                std::fprintf(stderr, "unknown criterion %d\n", c);
                ++g_failures;
        }
    };

    try {
        if (criterion == 0)
            for (int c = 1; c <= 10; ++c) run(c);
        else
            run(criterion);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unhandled error: %s\n", e.what());
        return 2;
    }
    return g_failures == 0 ? 0 : 1;
}
