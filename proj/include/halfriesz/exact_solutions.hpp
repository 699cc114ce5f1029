#ifndef HALFRIESZ_EXACT_SOLUTIONS_HPP
#define HALFRIESZ_EXACT_SOLUTIONS_HPP

#include <vector>

#include "halfriesz/params.hpp"
#include "halfriesz/radial_fn.hpp"

namespace halfriesz {

/*
 * Closed-form solution families of the boundary integral equation
 *
 *   v(x') = coupling * int v(z')^p |x'-z'|^{-(k-1)} dz'      on R^{N-1}.
 *
 * Supercritical family (p > p*): pure power trace v = c r^{-tau},
 * tau = (N-k)/(p-1).  Applying the composition identity to v^p shifts the
 * exponent by exactly tau again, so the power is an eigenfunction and c
 * solves  c^{p-1} * coupling * C(N, N-k, p tau) = 1.  The interior is
 * C_int * J_1 [ |y'|^{-(1+tau)} ] with C_int = c / C(N, 1, 1+tau).
 *
 * Critical family (p = p**): bubbles v = c (t/(t^2 + |x'-zeta'|^2))^{(k-1)/2};
 * raising to the power p lands back on the conjugate bubble profile with
 * exponent N-(k+1)/2, the classical extremal identity.  c is fixed by
 * one-point collocation at x' = zeta' and certified globally by the residual.
 */

struct ExactSolution {
    ProblemParams params;
    double trace_coeff = 0.0;    // c
    double trace_exponent = 0.0; // tau = (N-k)/(p-1)
    double interior_coeff = 0.0; // C_int = c / C(N,1,1+tau)

    RadialFn trace(const RadialGrid& grid) const;
};

struct BubbleSolution {
    ProblemParams params; // p = p** enforced
    double t = 1.0;           // bubble scale
    double zeta_offset = 0.0; // |zeta'|; radial trace only when 0
    double trace_coeff = 0.0; // c

    // c (t/(t^2 + rho^2))^{(k-1)/2} at in-plane distance rho from zeta'
    double trace_value(double rho) const;
    RadialFn trace(const RadialGrid& grid) const; // requires zeta_offset == 0
};

// Requires k > 1 and p > p*; verifies both composition windows
// 0 < N-k < p tau < N-1 (equivalent to p > p*) instead of assuming them.
ExactSolution build_exact_solution(const ProblemParams& params);

// Interior value at x = (r_prime, x_N).  Away from the borderline this is
// C_int J_1[|.|^{-(1+tau)}]; the trace at x_N = 0 is c r^{-tau}.
double exact_interior(const ExactSolution& sol, double r_prime, double x_N,
                      double tol = kDefaultQuadTol);

// Requires p = p** (relative tolerance kCriticalRelTol) and t > 0.
BubbleSolution build_bubble(const ProblemParams& params, double t, double zeta_offset = 0.0,
                            double tol = kDefaultQuadTol);

struct ResidualReport {
    double sup_rel_residual = 0.0;
    std::vector<double> r_samples;
    std::vector<double> per_point; // |v - Tv| / max(v, floor)
};

// Relative fixed-point residual of the composed trace operator over the
// samples.  The accurate adaptive route is used per sample.
ResidualReport fixed_point_residual(const RadialFn& v, const ProblemParams& params,
                                    std::vector<double> r_samples,
                                    double tol = kDefaultQuadTol);

} // namespace halfriesz

#endif
