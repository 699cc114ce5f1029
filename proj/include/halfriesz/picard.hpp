#ifndef HALFRIESZ_PICARD_HPP
#define HALFRIESZ_PICARD_HPP

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "halfriesz/params.hpp"
#include "halfriesz/radial_fn.hpp"
#include "halfriesz/radial_ops.hpp"

namespace halfriesz {

/*
 * Constructive solver for the integral equation
 *
 *   u = U^nu + coupling * (composed boundary term),   nu = mu + mubar,
 *
 * with mu a uniform surface measure on a sphere inside the open upper half
 * space.  Such a measure has a closed-form Newtonian potential (constant
 * inside the sphere, point-mass outside), so the linear part of the solver
 * carries no quadrature error at all.
 *
 * Existence theory for small coupling squeezes candidate traces between the
 * measure potential and an envelope M (1+|x|)^{1-k}; we realise the fixed
 * point by Picard iteration from v_0 = trace of U^nu.  The iteration is
 * pointwise nondecreasing (positive kernel, increasing nonlinearity), so
 * convergence is certified by the residual rather than assumed.
 */

struct SphereMeasure {
    double h = 1.0;    // center (0,...,0,h), h > 0
    double rho = 0.25; // radius, 0 < rho < h keeps the support inside the open half space
    double m = 1.0;    // total mass

    void validate() const;
};

// Newtonian potential of the sphere measure at distance `dist` from its
// center: m Phi(dist) outside, the constant m rho^{2-N}/((N-2) sigma_N) inside.
double newtonian_potential_sphere(const SphereMeasure& meas, int N, double dist);

// U^mu at the axisymmetric point (r', x_N).
double newtonian_potential_sphere_at(const SphereMeasure& meas, int N, double r_prime,
                                     double x_N);

// U^nu = U^mu + U^mubar at (r', x_N), x_N >= 0; equals the Green potential
// of mu over the half space.
double green_potential(const SphereMeasure& meas, int N, double r_prime, double x_N);

// A = sup over samples of U^mu(x) (1+|x|)^{k-1}; finite because the far
// field decays like |x|^{2-N} with 2-N <= 1-k.  Samples cover the axis,
// the sphere neighbourhood and a far ring.
double check_munu_bound(const SphereMeasure& meas, int N, double k,
                        const RadialGrid& sample_grid);

struct SolverConfig {
    double R = std::numeric_limits<double>::infinity(); // truncation radius of the
                                                        // composed apply; inf = whole space
    double envelope_factor = 2.5; // M = envelope_factor * A, must exceed 2
    double tol = 1e-8;            // sup-relative stopping difference
    int max_iter = 200;
    double blowup_threshold = 1e12;

    void validate() const;
};

enum class SolveStatus { Converged, Diverged, Stalled };

struct IterationReport {
    SolveStatus status = SolveStatus::Stalled;
    int iterations = 0;
    double final_residual = 0.0;            // matrix-route fixed point defect
    std::vector<double> residual_history;   // sup-relative step sizes, every iteration
    bool envelope_ok = true;                // final iterate under M (1+r)^{1-k}
    bool monotone_ok = true;                // v_{n+1} >= v_n - 1e-10 throughout
    double envelope_A = 0.0;                // fitted measure-potential bound
    double envelope_M = 0.0;                // configured envelope constant
    double sup_value = 0.0;                 // sup of the last iterate
    std::optional<RadialFn> trace;          // populated when Converged
    std::string detail;
};

std::string to_string(SolveStatus s);

// Boundary trace of T v = U^nu + coupling * composed apply of v^p, through a
// precomputed kernel matrix.  Exposed for operator-level tests.
RadialFn T_operator(const RadialFn& v, const SphereMeasure& meas, const ProblemParams& params,
                    const SolverConfig& cfg, const RadialGrid& grid);

// Picard iteration from v_0 = trace of U^nu.
IterationReport picard_iterate(const SphereMeasure& meas, const ProblemParams& params,
                               const SolverConfig& cfg, const RadialGrid& grid);

struct LambdaStarEstimate {
    double lambda_hat = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    IterationReport report_lo; // converged witness
    IterationReport report_hi; // diverged witness
};

// Bisects the Picard convergence threshold in lambda to 1e-2 relative
// width.  This locates where the iteration stops converging; it is an
// artifact-level quantity, not the sharp existence threshold.
LambdaStarEstimate lambda_star_estimate(const SphereMeasure& meas, ProblemParams params,
                                        const SolverConfig& cfg, const RadialGrid& grid,
                                        double lambda_lo, double lambda_hi);

// u(x) at x = (r', x_N) from a converged trace:
//   green potential + coupling-weighted lift of the boundary density.
// Away from the borderline the density is H v computed on the grid of the
// trace; at k = N-1 the normalised density is v^p (see radial_ops.hpp).
double reconstruct_interior(const RadialFn& trace, const SphereMeasure& meas,
                            const ProblemParams& params, double r_prime, double x_N,
                            double tol = kDefaultQuadTol);

} // namespace halfriesz

#endif
