#ifndef HALFRIESZ_ANALYSIS_HPP
#define HALFRIESZ_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halfriesz/params.hpp"
#include "halfriesz/radial_fn.hpp"

namespace halfriesz {

/*
 * Numerical verification of the quantitative estimates behind the existence
 * machinery: the descent recurrence driving nonexistence below p*, the two
 * weighted kernel bounds, the Hoelder bound for the lifting operator, and
 * the Hardy-Littlewood-Sobolev inequality on radial data.
 */

// ---- descent recurrence --------------------------------------------------

enum class BootstrapVerdict {
    CertifiedNonexistence,  // some gamma_{n+1} <= 0 with gamma_n > 0
    NoCertificate,          // p >= p*: descent does not reach zero
    Inconclusive,           // n_max exhausted before classification
};

enum class BootstrapLimit {
    FiniteLimit,       // 0 < p < 1: gamma_n -> (N-k)/(p-1)
    MinusInfinity,     // 1 <= p < p*
    StationaryAtStart, // p = p*: gamma_0 is the fixed point of the map
    PlusInfinity,      // p > p*: iterates increase without bound
};

struct BootstrapTrace {
    std::vector<double> gamma;          // gamma_0 = k-1, gamma_{n+1} = p gamma_n + k - N
    std::vector<std::string> gamma_exact; // "num/den" when the exact path ran
    bool exact_arithmetic = false;
    std::optional<int> stop_index;      // n with gamma_n > 0 >= gamma_{n+1}
    BootstrapVerdict verdict = BootstrapVerdict::Inconclusive;
    BootstrapLimit limit = BootstrapLimit::MinusInfinity;
    double limit_value = 0.0;           // populated for FiniteLimit / StationaryAtStart
};

std::string to_string(BootstrapVerdict v);
std::string to_string(BootstrapLimit l);

// Runs the recurrence in exact int64 rational arithmetic whenever k and p
// are recognisably rational (falling back to doubles on overflow, recorded
// in exact_arithmetic).  Requires k > 1.
BootstrapTrace bootstrap_sequence(const ProblemParams& params, int n_max = 64);

// ---- weighted kernel estimates --------------------------------------------

struct SupRatioReport {
    double sup_ratio = 0.0;
    double argmax = 0.0;
    std::vector<double> ratios; // per grid node
};

// LHS(y') = int |y'-z'|^{-k} (1+|z'|)^{-beta} dz' against (1+|y'|)^{-k}:
// returns sup over the grid of LHS * (1+|y'|)^k.  Window 1 < k < N-1 < beta.
SupRatioReport verify_estimate_stan1(double k, double beta, int N, const RadialGrid& y_grid,
                                     double tol = kDefaultQuadTol);

// LHS(x) = int |x-(y',0)|^{-(N-2)} (1+|y'|)^{-k} dy' against (1+|x|)^{1-k}:
// sup over samples (r', x_N) of LHS * (1+|x|)^{k-1}.  Window 1 < k <= N-1
// (the integral stays finite at the borderline; the sup then grows slowly
// with the sampled radius, which the report exposes rather than hides).
SupRatioReport verify_estimate_stan6(double k, int N,
                                     const std::vector<std::pair<double, double>>& x_samples,
                                     double tol = kDefaultQuadTol);

// ---- Hoelder estimate for the lifting ------------------------------------

struct PointN {
    double r_prime = 0.0; // in-plane radius
    double x_N = 0.0;     // height, may be 0
};

struct HolderReport {
    double emp_const = 0.0;    // max |J f(x) - J f(z)| / |x-z|^gamma
    double emp_exponent = 0.0; // LS slope of log|dJ| vs log|dx|
    double gamma = 0.0;        // alpha - (N-1)/q
};

// Window alpha-1 < (N-1)/q < alpha and f in the q class (tail q-integrable).
// Pairs are (x, z) with both points axisymmetric representatives.
HolderReport holder_check(const RadialFn& f, double alpha, double q, int N,
                          const std::vector<std::pair<PointN, PointN>>& pairs,
                          double tol = kDefaultQuadTol);

// Convenience ladder: pairs (x0, x0 + delta e) for delta spanning
// `decades` decades downward from delta_max, in direction e; directions
// alternate in-plane and vertical so the ladder straddles the boundary.
std::vector<std::pair<PointN, PointN>> holder_pair_ladder(PointN x0, double delta_max,
                                                          int decades, int per_decade = 2);

// ---- Hardy-Littlewood-Sobolev ratio ---------------------------------------

// ||I_alpha f||_q / ||f||_s with q = (N-1)s/(N-1-alpha s); zero input maps
// to 0 by convention.  Norms are radial 1D integrals with the sphere factor.
double hls_check(const RadialFn& f, double s, double alpha, int N,
                 double tol = kDefaultQuadTol);

// ---- lower bound for candidate traces -------------------------------------

// Fits C from v at r = 2 and checks v(r) >= 0.5 C r^{1-k} on (2, r_max].
bool lower_bound_check(const RadialFn& v, const ProblemParams& params);

} // namespace halfriesz

#endif
