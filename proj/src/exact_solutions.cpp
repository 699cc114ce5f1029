#include "halfriesz/exact_solutions.hpp"

#include <cmath>
#include <sstream>

#include "halfriesz/radial_ops.hpp"
#include "halfriesz/special.hpp"

namespace halfriesz {

RadialFn ExactSolution::trace(const RadialGrid& grid) const {
    return RadialFn::pure_power(grid, trace_coeff, trace_exponent);
}

double BubbleSolution::trace_value(double rho) const {
    const double e = (params.k - 1.0) / 2.0;
    return trace_coeff * std::pow(t / (t * t + rho * rho), e);
}

RadialFn BubbleSolution::trace(const RadialGrid& grid) const {
    if (zeta_offset != 0.0)
        throw std::domain_error("BubbleSolution::trace: radial only for zeta' = 0; "
                                "off-center bubbles are pointwise only");
    auto f = [this](double r) { return trace_value(r); };
    auto v = RadialFn::from_function(grid, f);
    // exact laws: coeff t^{e} r^{-2e} tail, finite limit at the origin
    const double e = (params.k - 1.0) / 2.0;
    return RadialFn(grid, v.values(), {trace_coeff * std::pow(t, e), 2.0 * e},
                    {trace_value(0.0), 0.0});
}

ExactSolution build_exact_solution(const ProblemParams& params) {
    params.validate();
    if (params.k <= 1.0)
        throw std::domain_error("build_exact_solution: requires k > 1");
    const auto ce = critical_exponents(params);
    if (!(params.p > ce.p_star * (1.0 + kCriticalRelTol))) {
        std::ostringstream os;
        os << "build_exact_solution: no such solution for p <= p* (p=" << params.p
           << ", p*=" << ce.p_star << ")";
        throw std::domain_error(os.str());
    }
    const double N = params.N, k = params.k, p = params.p;
    const double tau = (N - k) / (p - 1.0);

    // Both composition windows must hold; they do exactly when p > p*.
    const double a2 = N - k, b2 = p * tau;
    if (!(0.0 < a2 && a2 < b2 && b2 < N - 1.0)) {
        std::ostringstream os;
        os << "build_exact_solution: composition window 0 < N-k < p*tau < N-1 violated "
           << "(N-k=" << a2 << ", p*tau=" << b2 << ")";
        throw std::domain_error(os.str());
    }
    const double c2 = riesz_composition_constant(params.N, a2, b2).value;
    const double coupling = composed_coupling(params);
    // c^{p-1} * coupling * C(N, N-k, p tau) = 1
    const double c = std::pow(coupling * c2, -1.0 / (p - 1.0));

    ExactSolution sol;
    sol.params = params;
    sol.trace_coeff = c;
    sol.trace_exponent = tau;
    // interior density |y'|^{-(1+tau)}: window 0 < 1 < 1+tau < N-1 holds for
    // every p > p* (tau < N-2 then)
    sol.interior_coeff = c / riesz_composition_constant(params.N, 1.0, 1.0 + tau).value;
    return sol;
}

double exact_interior(const ExactSolution& sol, double r_prime, double x_N, double tol) {
    if (x_N < 0.0) throw std::domain_error("exact_interior: x_N >= 0 required");
    if (x_N == 0.0) {
        if (r_prime == 0.0)
            throw std::domain_error("exact_interior: boundary trace singular at the origin");
        return sol.trace_coeff * std::pow(r_prime, -sol.trace_exponent);
    }
    // C_int J_1[|.|^{-(1+tau)}] evaluated by the lifted radial reduction
    const double tau = sol.trace_exponent;
    const auto grid = RadialGrid::geometric(1e-4, 1e4, 161);
    const RadialFn density = RadialFn::pure_power(grid, 1.0, 1.0 + tau);
    return sol.interior_coeff * lifting_J(density, 1.0, sol.params.N, r_prime, x_N, tol);
}

BubbleSolution build_bubble(const ProblemParams& params, double t, double zeta_offset,
                            double tol) {
    params.validate();
    if (params.k <= 1.0) throw std::domain_error("build_bubble: requires k > 1");
    if (!(t > 0.0)) throw std::domain_error("build_bubble: bubble scale t > 0 required");
    if (zeta_offset < 0.0) throw std::domain_error("build_bubble: zeta_offset >= 0 required");
    const auto ce = critical_exponents(params);
    if (std::abs(params.p - ce.p_star_star) > kCriticalRelTol * ce.p_star_star) {
        std::ostringstream os;
        os << "build_bubble: bubbles exist only at p = p** (p=" << params.p
           << ", p**=" << ce.p_star_star << ")";
        throw std::domain_error(os.str());
    }

    // Collocate at x' = zeta' with the unit-coefficient profile.  For the
    // radial representative zeta' = 0 the collocation integral is the
    // composed apply at r = 0; translation invariance covers zeta' != 0.
    BubbleSolution bub;
    bub.params = params;
    bub.t = t;
    bub.zeta_offset = zeta_offset;
    bub.trace_coeff = 1.0;

    const auto grid = RadialGrid::geometric(1e-5, 1e5, 481);
    BubbleSolution unit = bub;
    unit.zeta_offset = 0.0;
    const RadialFn unit_trace = unit.trace(grid);
    const double lhs = unit.trace_value(0.0);
    const double apply0 = composed_trace_at(unit_trace, params, 0.0, tol);
    if (!(apply0 > 0.0)) throw std::runtime_error("build_bubble: collocation integral vanished");
    // c * lhs_profile = coupling * c^p * apply_profile  =>  c^{p-1} = lhs/apply0
    bub.trace_coeff = std::pow(lhs / apply0, 1.0 / (params.p - 1.0));
    return bub;
}

ResidualReport fixed_point_residual(const RadialFn& v, const ProblemParams& params,
                                    std::vector<double> r_samples, double tol) {
    constexpr double kFloor = 1e-300;
    ResidualReport rep;
    rep.r_samples = std::move(r_samples);
    rep.per_point.reserve(rep.r_samples.size());
    for (double r : rep.r_samples) {
        const double lhs = v(r);
        const double rhs = composed_trace_at(v, params, r, tol);
        const double res = std::abs(lhs - rhs) / std::max(lhs, kFloor);
        rep.per_point.push_back(res);
        rep.sup_rel_residual = std::max(rep.sup_rel_residual, res);
    }
    return rep;
}

} // namespace halfriesz
