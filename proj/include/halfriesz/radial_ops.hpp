#ifndef HALFRIESZ_RADIAL_OPS_HPP
#define HALFRIESZ_RADIAL_OPS_HPP

#include "halfriesz/params.hpp"
#include "halfriesz/radial_fn.hpp"

namespace halfriesz {

/*
 * Integral operators on radial boundary data, reduced to 1D quadrature
 * through the angular kernels:
 *
 *   Riesz potential of order alpha on R^d (d = N-1):
 *     (I_alpha v)(r) = int_0^inf v(s) s^{d-1} A_{d-alpha}(r, s) ds
 *
 *   boundary convolution:
 *     (H v)(r)   = I_{d-k} [v^p]           kernel |.|^{-k}
 *
 *   alpha-lifting into the half space, x = (r', x_N):
 *     (J_alpha f)(x) = int f(s) s^{d-1} A_{d-alpha}(r', s; x_N) ds
 *
 *   composed trace operator (the boundary convolution followed by the trace
 *   of the 1-lift, collapsed by the composition identity):
 *     (T0 v)(r) = coupling * int v(s)^p s^{d-1} A_{k-1}(r, s) ds
 *
 * Finiteness needs the usual weighted-integrability of the data, checked
 * through the law exponents before any quadrature runs: tail exponent
 * tau_out > alpha and origin exponent tau_in < d.
 */

// Riesz potential of order alpha in dimension d applied to radial data.
// Output lives on the same grid; its tail exponent is set analytically to
// min(tau_out - alpha, d - alpha) and checked against the computed values.
RadialFn riesz_potential_radial(const RadialFn& v, double alpha, int d,
                                double tol = kDefaultQuadTol);

// Single-target evaluation of the same integral (adaptive, no grid output).
double riesz_apply_at(const RadialFn& v, double alpha, int d, double r,
                      double tol = kDefaultQuadTol);

// H v = I_{N-1-k} [v^p].  Rejects borderline k = N-1, where the kernel
// |.|^{-k} is not locally integrable on R^{N-1}; use the composed operator.
RadialFn boundary_operator_H(const RadialFn& v, const ProblemParams& params,
                             double tol = kDefaultQuadTol);

// J_alpha f at x = (r_prime, x_N); at x_N = 0 equals I_alpha f(r_prime).
double lifting_J(const RadialFn& f, double alpha, int N, double r_prime, double x_N,
                 double tol = kDefaultQuadTol);

/*
 * Coupling constant multiplying the composed kernel integral:
 *   2 lambda / ((N-2) sigma_N) * C(N, 1, k)        for 1 < k < N-1.
 *
 * At the borderline k = N-1 the composition constant C(N,1,k) diverges while
 * the composed kernel |.|^{-(k-1)} = |.|^{-(N-2)} stays integrable; the
 * normalised convolution H v / C(N,1,k) tends to v^p pointwise, so the
 * composed operator survives as T0 v = coupling * I_1[v^p] with the
 * convention coupling = 2 lambda / ((N-2) sigma_N) (unit stand-in for the
 * divergent constant).  That convention is what ties lambda to the strength
 * of the boundary term at the borderline; it is documented in the README.
 */
double composed_coupling(const ProblemParams& params);

// (T0 v)(r) = composed_coupling * int v(s)^p s^{d-1} A_{k-1}(r,s) ds on the
// grid of v.  Requires k > 1 (below that the composed kernel diverges at
// infinity against any admissible trace) and the tail condition
// p tau_out + (k-1) > N-1.
RadialFn composed_trace_operator(const RadialFn& v, const ProblemParams& params,
                                 double tol = kDefaultQuadTol);

// Same, at a single radius (adaptive; the accurate route for residuals).
double composed_trace_at(const RadialFn& v, const ProblemParams& params, double r,
                         double tol = kDefaultQuadTol);

/*
 * Truncated double kernel
 *   K_R(r_x, r_z) = int_{B'_R} |x'-y'|^{-(N-2)} |y'-z'|^{-k} dy',
 * for representative x' = (r_x, 0, ...), z' = (r_z, 0, ...).  Monotone
 * nondecreasing in R; converges to C(N,1,k) |r_x - r_z|^{-(k-1)} as R grows.
 * Implemented for N = 3 by direct planar quadrature; requires k < N-1
 * (the inner singularity at y' = z' is not integrable at the borderline).
 */
double truncated_kernel_KR(double r_x, double r_z, double R, const ProblemParams& params,
                           double tol = kNestedQuadTol);

/*
 * Precomputed application of the composed kernel on a fixed grid:
 * row i approximates int phi(s) s^{d-1} A_{k-1}(r_i, s) ds against piecewise
 * linear densities, plus constant-origin and declared-power tail columns.
 * One assembly per (params, grid); every Picard step is then a matrix apply.
 */
class ComposedKernelMatrix {
public:
    // truncation radius R > r_max restricts the integral to [0, R];
    // R = infinity integrates the declared tail law too.
    ComposedKernelMatrix(const RadialGrid& grid, const ProblemParams& params,
                         double truncation_radius, double tol = kDefaultQuadTol);

    // weights * f applied to a density given on the grid (f = v^p values),
    // with its origin/tail laws for the off-grid parts.
    std::vector<double> apply(const RadialFn& density) const;

    double truncation_radius() const { return R_; }

private:
    RadialGrid grid_;
    int d_;
    double beta_; // k - 1
    double R_;
    double tol_;
    std::vector<std::vector<double>> weights_; // [target][node]
    std::vector<double> origin_weights_;       // constant density on [0, r_min]
    mutable std::vector<std::pair<double, std::vector<double>>> tail_cache_; // per tau
    const std::vector<double>& tail_weights(double tau) const;
};

} // namespace halfriesz

#endif
