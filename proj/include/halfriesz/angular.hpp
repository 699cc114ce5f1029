#ifndef HALFRIESZ_ANGULAR_HPP
#define HALFRIESZ_ANGULAR_HPP

namespace halfriesz {

/*
 * Angular kernels of the spherical reduction on R^d.  For radial f,
 *
 *   int_{R^d} f(|z|) |y - z|^{-beta} dz = int_0^inf f(s) s^{d-1} A_beta(|y|, s) ds,
 *
 * where A_beta(r,s) = int_{S^{d-1}} |r e_1 - s w|^{-beta} dsigma(w).  The same
 * reduction with the target lifted off the hyperplane by height h replaces
 * the squared distance r^2 + s^2 - 2 r s cos(theta) by (... + h^2), which is
 * what lift_height below does.
 *
 *   d = 2:    A = int_0^{2pi} (r^2+s^2+h^2 - 2 r s cos t)^{-beta/2} dt
 *   d >= 3:   A = |S^{d-2}| int_0^pi (same)^{-beta/2} sin^{d-2} t dt
 *
 * Closed forms used as fast paths (checked against the adaptive route in the
 * tests): beta = 1, d = 2 via the complete elliptic integral K; beta = 2,
 * d = 2 rational; any beta, d = 3 by the u = cos t substitution.
 *
 * Symmetric in (r,s).  On the diagonal r = s (with h = 0) the kernel is
 * finite only for beta < d-1; callers integrating across the diagonal pass a
 * singularity hint there.  Requesting the diagonal value itself with
 * beta >= d-1 reports the divergence.
 */
double angular_kernel(int d, double beta, double r, double s, double lift_height = 0.0);

// Local strength of the diagonal singularity of A_beta(r, .) at s = r:
// A ~ |r-s|^{-(beta-(d-1))} for beta > d-1, logarithmic at beta = d-1,
// bounded below that.  Returns the hint exponent to use when integrating
// across the diagonal (a small positive value in the log case).
double angular_diagonal_exponent(int d, double beta);

} // namespace halfriesz

#endif
