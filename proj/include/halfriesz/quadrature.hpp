#ifndef HALFRIESZ_QUADRATURE_HPP
#define HALFRIESZ_QUADRATURE_HPP

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace halfriesz {

// Raised on NaN integrands, divergent integrals detected analytically, and
// (via integrate_or_throw) on failure to reach the requested tolerance.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Local power behaviour of an integrand: f(t) ~ |t - location|^{-exponent}.
// Integrable treatment requires exponent < 1; the integrator splits the
// interval at the location and grades panels geometrically toward it.
struct SingularityHint {
    double location;
    double exponent;
};

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    bool converged = true;
    long long evaluations = 0;
};

inline constexpr double kDefaultQuadTol = 1e-8; // 1D default
inline constexpr double kNestedQuadTol = 1e-6;  // nested 2D default

// Adaptive Gauss-Kronrod (7,15) over [a,b].  Hinted singular points get a
// geometric pre-split clustering toward them before global refinement; a
// hint with exponent >= 1 inside [a,b] is rejected as non-integrable.
// `breaks` lists known kinks (e.g. interpolation nodes) used as initial
// panel boundaries.  NaN or infinity from f raises quadrature_error.  When
// the subdivision cap is reached before the error estimate drops under
// max(tol, 1e-11 |I|), the result carries converged = false.
QuadResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                              double tol = kDefaultQuadTol,
                              std::span<const SingularityHint> hints = {},
                              std::span<const double> breaks = {});

// Same, but throws quadrature_error on non-convergence.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double tol = kDefaultQuadTol,
                          std::span<const SingularityHint> hints = {},
                          std::span<const double> breaks = {});

// Integral over [a, infinity) through the substitution t = a + s(1+u)/(1-u),
// u in [0,1), with scale s (defaults to max(a,1)).  The integrand must decay
// like t^{-tau} with tau > 1; pass tau when known so the endpoint grading
// matches the decay.
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double tol = kDefaultQuadTol, double tail_exponent = 2.0,
                                 double scale = 0.0);

// Exact tail integral of a declared power law: int_T^inf c t^{-tau} dt.
// Requires tau > 1.
double power_tail_integral(double coeff, double tau, double T);

/*
 * Geometrically spaced radial grid on [r_min, r_max].  All radial profiles in
 * this library are power-like, so constant node ratios give uniform relative
 * resolution; refinement_level counts doublings applied to the node count.
 */
struct RadialGrid {
    double r_min = 0.0;
    double r_max = 0.0;
    std::vector<double> nodes; // strictly increasing, nodes.front()=r_min, back()=r_max
    int refinement_level = 0;

    static RadialGrid geometric(double r_min, double r_max, int n_nodes);

    // New grid with 2*(n-1)+1 nodes on the same span; bumps refinement_level.
    RadialGrid refined() const;

    size_t size() const { return nodes.size(); }
    void validate() const; // monotone, endpoints, ratio constant to 1e-12
};

} // namespace halfriesz

#endif
