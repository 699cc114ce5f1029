#include "halfriesz/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "halfriesz/special.hpp"

namespace halfriesz {

void SphereMeasure::validate() const {
    std::ostringstream bad;
    if (!(h > 0.0)) bad << "h > 0 violated; ";
    if (!(rho > 0.0 && rho < h))
        bad << "0 < rho < h violated (support must stay inside the open half space); ";
    if (!(m > 0.0)) bad << "m > 0 violated; ";
    if (const auto msg = bad.str(); !msg.empty())
        throw std::invalid_argument("SphereMeasure: " + msg);
}

void SolverConfig::validate() const {
    std::ostringstream bad;
    if (!(R >= 1.0)) bad << "R >= 1 violated; ";
    if (!(envelope_factor > 2.0)) bad << "envelope factor must exceed 2; ";
    if (!(tol > 0.0)) bad << "tol > 0 violated; ";
    if (max_iter < 1) bad << "max_iter >= 1 violated; ";
    if (!(blowup_threshold > 0.0)) bad << "blowup_threshold > 0 violated; ";
    if (const auto msg = bad.str(); !msg.empty())
        throw std::invalid_argument("SolverConfig: " + msg);
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::Diverged: return "Diverged";
        case SolveStatus::Stalled: return "Stalled";
    }
    return "?";
}

double newtonian_potential_sphere(const SphereMeasure& meas, int N, double dist) {
    meas.validate();
    if (dist < 0.0) throw std::domain_error("newtonian_potential_sphere: dist >= 0");
    // classical Newton theorem for a uniform sphere: point mass outside,
    // constant potential inside
    if (dist >= meas.rho) return meas.m * fundamental_solution_radius(N, dist);
    return meas.m * fundamental_solution_radius(N, meas.rho);
}

double newtonian_potential_sphere_at(const SphereMeasure& meas, int N, double r_prime,
                                     double x_N) {
    const double dz = x_N - meas.h;
    return newtonian_potential_sphere(meas, N, std::sqrt(r_prime * r_prime + dz * dz));
}

double green_potential(const SphereMeasure& meas, int N, double r_prime, double x_N) {
    if (x_N < 0.0) throw std::domain_error("green_potential: x in the closed upper half space");
    const double dz_direct = x_N - meas.h;
    const double dz_reflect = x_N + meas.h;
    return newtonian_potential_sphere(meas, N,
                                      std::sqrt(r_prime * r_prime + dz_direct * dz_direct)) +
           newtonian_potential_sphere(meas, N,
                                      std::sqrt(r_prime * r_prime + dz_reflect * dz_reflect));
}

double check_munu_bound(const SphereMeasure& meas, int N, double k, const RadialGrid& grid) {
    meas.validate();
    if (!(k > 1.0) || k > (N - 1) * (1.0 + kCriticalRelTol))
        throw std::domain_error("check_munu_bound: 1 < k <= N-1 required");
    double A = 0.0;
    auto probe = [&](double r_prime, double x_N) {
        const double U = newtonian_potential_sphere_at(meas, N, r_prime, x_N);
        const double ax = std::sqrt(r_prime * r_prime + x_N * x_N);
        A = std::max(A, U * std::pow(1.0 + ax, k - 1.0));
    };
    // The far field decays like |x|^{2-N} against the envelope |x|^{1-k}
    // with 2-N <= 1-k, so the sup lives at finite radius; sweep the axis,
    // the boundary plane, a diagonal ray and the sphere neighbourhood.
    for (double t : grid.nodes) {
        probe(0.0, t);
        probe(0.0, std::max(0.0, meas.h - t));
        probe(t, 0.0);
        probe(t / std::numbers::sqrt2, t / std::numbers::sqrt2);
        probe(t, meas.h);
    }
    probe(0.0, meas.h);              // center: interior constant
    probe(0.0, meas.h + meas.rho);   // top of the sphere
    probe(meas.rho, meas.h);         // side of the sphere
    return A;
}

namespace {

RadialFn green_trace(const SphereMeasure& meas, const ProblemParams& params,
                     const RadialGrid& grid) {
    const int N = params.N;
    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        vals[i] = green_potential(meas, N, grid.nodes[i], 0.0);
    // exact far field 2 m Phi(r): anchor the law on the last node
    const double tau = N - 2.0;
    PowerLaw tail{vals.back() * std::pow(grid.r_max, tau), tau};
    PowerLaw origin{green_potential(meas, N, 0.0, 0.0), 0.0};
    return RadialFn(grid, std::move(vals), tail, origin);
}

double composed_tail_exponent(const ProblemParams& params, double tau_v) {
    const double alpha = params.N - params.k;
    return std::min({static_cast<double>(params.N) - 2.0,
                     params.k - 1.0, params.p * tau_v - alpha});
}

struct StepOutcome {
    std::vector<double> vals;
    double sup = 0.0;
    bool finite = true;
    bool under_envelope = true;
};

StepOutcome apply_T(const ComposedKernelMatrix* matrix, const RadialFn& v,
                    const std::vector<double>& unu_vals, double coupling,
                    const RadialGrid& grid, const ProblemParams& params, double M) {
    StepOutcome out;
    out.vals = unu_vals;
    if (coupling > 0.0 && matrix) {
        const RadialFn density = v.pow(params.p);
        const auto nl = matrix->apply(density);
        for (size_t i = 0; i < out.vals.size(); ++i) out.vals[i] += coupling * nl[i];
    }
    for (size_t i = 0; i < out.vals.size(); ++i) {
        const double val = out.vals[i];
        if (!std::isfinite(val)) out.finite = false;
        out.sup = std::max(out.sup, val);
        if (val > M * std::pow(1.0 + grid.nodes[i], 1.0 - params.k) * (1.0 + 1e-10))
            out.under_envelope = false;
    }
    return out;
}

RadialFn make_iterate(const RadialGrid& grid, std::vector<double> vals,
                      const ProblemParams& params, double tau_v_prev) {
    const double tau = std::min(static_cast<double>(params.N) - 2.0,
                                composed_tail_exponent(params, tau_v_prev));
    PowerLaw tail{vals.back() * std::pow(grid.r_max, tau), tau};
    PowerLaw origin{vals.front(), 0.0};
    RadialFn out(grid, std::move(vals), tail, origin);
    out.check_tail_consistency();
    return out;
}

IterationReport picard_impl(const ComposedKernelMatrix* matrix, const SphereMeasure& meas,
                            const ProblemParams& params, const SolverConfig& cfg,
                            const RadialGrid& grid) {
    IterationReport rep;
    rep.envelope_A = check_munu_bound(meas, params.N, params.k, grid);
    // the trace of the Green potential is 2 U^mu, so any factor above 2
    // contains the starting iterate
    rep.envelope_M = cfg.envelope_factor * rep.envelope_A;
    const double coupling = params.lambda == 0.0 ? 0.0 : composed_coupling(params);

    const RadialFn v0 = green_trace(meas, params, grid);
    const std::vector<double> unu_vals = v0.values();

    RadialFn v = v0;
    double tau_prev = params.N - 2.0;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        StepOutcome step = apply_T(matrix, v, unu_vals, coupling, grid, params, rep.envelope_M);
        rep.iterations = iter;
        rep.sup_value = step.sup;

        if (!step.finite || step.sup >= cfg.blowup_threshold) {
            rep.status = SolveStatus::Diverged;
            rep.detail = "iterate exceeded blowup threshold";
            rep.residual_history.push_back(std::numeric_limits<double>::infinity());
            return rep;
        }
        if (!step.under_envelope) {
            rep.status = SolveStatus::Diverged;
            rep.envelope_ok = false;
            rep.detail = "iterate escaped the envelope M(1+r)^{1-k}";
            rep.residual_history.push_back(std::numeric_limits<double>::infinity());
            return rep;
        }

        // monotonicity of the Picard sequence from below
        for (size_t i = 0; i < step.vals.size(); ++i)
            if (step.vals[i] < v.values()[i] - 1e-10 * std::max(1.0, v.values()[i]))
                rep.monotone_ok = false;

        double diff = 0.0;
        for (size_t i = 0; i < step.vals.size(); ++i) {
            const double denom = std::max(step.vals[i], 1e-300);
            diff = std::max(diff, std::abs(step.vals[i] - v.values()[i]) / denom);
        }
        rep.residual_history.push_back(diff);

        RadialFn v_next = make_iterate(grid, std::move(step.vals), params, tau_prev);
        tau_prev = v_next.tail().exponent;
        v = std::move(v_next);

        if (diff <= cfg.tol) {
            // defect of the accepted iterate under one more application
            StepOutcome again =
                apply_T(matrix, v, unu_vals, coupling, grid, params, rep.envelope_M);
            double defect = 0.0;
            for (size_t i = 0; i < again.vals.size(); ++i) {
                const double denom = std::max(v.values()[i], 1e-300);
                defect = std::max(defect, std::abs(again.vals[i] - v.values()[i]) / denom);
            }
            rep.final_residual = defect;
            rep.status = SolveStatus::Converged;
            rep.trace = std::move(v);
            return rep;
        }
    }
    rep.status = SolveStatus::Stalled;
    rep.detail = "max_iter reached without convergence or blowup";
    return rep;
}

} // namespace

RadialFn T_operator(const RadialFn& v, const SphereMeasure& meas, const ProblemParams& params,
                    const SolverConfig& cfg, const RadialGrid& grid) {
    params.validate();
    meas.validate();
    cfg.validate();
    for (double val : v.values())
        if (val < 0.0) throw std::domain_error("T_operator: v must be nonnegative");
    const double coupling = params.lambda == 0.0 ? 0.0 : composed_coupling(params);
    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        vals[i] = green_potential(meas, params.N, grid.nodes[i], 0.0);
    if (coupling > 0.0) {
        ComposedKernelMatrix matrix(grid, params, cfg.R);
        const auto nl = matrix.apply(v.pow(params.p));
        for (size_t i = 0; i < vals.size(); ++i) vals[i] += coupling * nl[i];
    }
    const double tau_v = v.tail().coeff == 0.0 ? std::numeric_limits<double>::infinity()
                                               : v.tail().exponent;
    return make_iterate(grid, std::move(vals), params, tau_v);
}

IterationReport picard_iterate(const SphereMeasure& meas, const ProblemParams& params,
                               const SolverConfig& cfg, const RadialGrid& grid) {
    params.validate();
    meas.validate();
    cfg.validate();
    if (params.lambda == 0.0) return picard_impl(nullptr, meas, params, cfg, grid);
    ComposedKernelMatrix matrix(grid, params, cfg.R);
    return picard_impl(&matrix, meas, params, cfg, grid);
}

LambdaStarEstimate lambda_star_estimate(const SphereMeasure& meas, ProblemParams params,
                                        const SolverConfig& cfg, const RadialGrid& grid,
                                        double lambda_lo, double lambda_hi) {
    if (!(0.0 < lambda_lo && lambda_lo < lambda_hi))
        throw std::invalid_argument("lambda_star_estimate: need 0 < lambda_lo < lambda_hi");
    meas.validate();
    cfg.validate();
    ComposedKernelMatrix matrix(grid, params, cfg.R);
    auto run = [&](double lam) {
        params.lambda = lam;
        params.validate();
        return picard_impl(&matrix, meas, params, cfg, grid);
    };
    LambdaStarEstimate est;
    est.bracket_lo = lambda_lo;
    est.bracket_hi = lambda_hi;
    est.report_lo = run(lambda_lo);
    est.report_hi = run(lambda_hi);
    if (est.report_lo.status != SolveStatus::Converged ||
        est.report_hi.status != SolveStatus::Diverged) {
        std::ostringstream os;
        os << "lambda_star_estimate: invalid bracket, lambda_lo=" << lambda_lo << " gave "
           << to_string(est.report_lo.status) << ", lambda_hi=" << lambda_hi << " gave "
           << to_string(est.report_hi.status);
        throw std::runtime_error(os.str());
    }
    double lo = lambda_lo, hi = lambda_hi;
    while (hi - lo > 1e-2 * lo) {
        const double mid = std::sqrt(lo * hi);
        auto rep = run(mid);
        if (rep.status == SolveStatus::Converged) {
            lo = mid;
            est.report_lo = std::move(rep);
        } else {
            hi = mid;
            est.report_hi = std::move(rep);
        }
    }
    est.bracket_lo = lo;
    est.bracket_hi = hi;
    est.lambda_hat = std::sqrt(lo * hi);
    return est;
}

double reconstruct_interior(const RadialFn& trace, const SphereMeasure& meas,
                            const ProblemParams& params, double r_prime, double x_N,
                            double tol) {
    params.validate();
    meas.validate();
    if (x_N < 0.0)
        throw std::domain_error("reconstruct_interior: x in the closed upper half space");
    const double linear = green_potential(meas, params.N, r_prime, x_N);
    if (params.lambda == 0.0) return linear;
    if (params.k_borderline()) {
        // limit form: the normalised boundary density is v^p itself
        const double c = composed_coupling(params);
        return linear + c * lifting_J(trace.pow(params.p), 1.0, params.N, r_prime, x_N, tol);
    }
    const double prefactor =
        2.0 * params.lambda / ((params.N - 2) * sphere_area(params.N));
    const RadialFn H = boundary_operator_H(trace, params, std::max(tol, kNestedQuadTol));
    return linear + prefactor * lifting_J(H, 1.0, params.N, r_prime, x_N, tol);
}

} // namespace halfriesz
