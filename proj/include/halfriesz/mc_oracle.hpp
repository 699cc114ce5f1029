#ifndef HALFRIESZ_MC_ORACLE_HPP
#define HALFRIESZ_MC_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace halfriesz {

/*
 * Independent Monte Carlo integration oracle.  Deliberately shares no kernels
 * or panel machinery with adaptive_integrate so that cross-checks between the
 * two are genuinely independent.
 *
 * Domains are balls, annuli, or sphere surfaces in R^d.  For balls and annuli
 * the radius is drawn from a density proportional to t^{d-1+radial_exponent},
 * so radial_exponent = -g makes f/p bounded for integrands with an
 * |y-center|^{-g} singularity at the center (g < d required for
 * integrability).  radial_exponent = 0 is plain uniform sampling.
 */
struct McDomain {
    enum class Kind { Ball, Annulus, Sphere } kind = Kind::Ball;
    std::vector<double> center;
    double r_inner = 0.0; // annulus only
    double r_outer = 1.0; // ball / annulus radius; sphere radius
    double radial_exponent = 0.0;

    static McDomain ball(std::vector<double> center, double radius, double radial_exponent = 0.0);
    static McDomain annulus(std::vector<double> center, double r_inner, double r_outer,
                            double radial_exponent = 0.0);
    static McDomain sphere(std::vector<double> center, double radius);
};

struct McResult {
    double estimate = 0.0;
    double stderr_est = 0.0;
    std::int64_t samples = 0;
};

// Unbiased estimate of int_domain f (surface integral for Sphere domains).
// Deterministic for a fixed seed: single stream, fixed-order accumulation.
McResult mc_integral_oracle(const std::function<double(std::span<const double>)>& f,
                            const McDomain& domain, std::int64_t samples, std::uint64_t seed);

} // namespace halfriesz

#endif
