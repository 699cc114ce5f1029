#ifndef HALFRIESZ_PARAMS_HPP
#define HALFRIESZ_PARAMS_HPP

#include <stdexcept>
#include <string>

namespace halfriesz {

// Relative tolerance used when testing p against a critical exponent.
// The critical cases are measure-zero; callers wanting them exactly should
// construct p from p_star / p_star_star directly.
inline constexpr double kCriticalRelTol = 1e-12;

/*
 * Problem data for
 *
 *   -Lap u = mu                      in the upper half space of R^N,
 *   du/dn(x',0) = lambda * int u(y',0)^p |x'-y'|^{-k} dy'   on the boundary,
 *
 * with N >= 3, p, lambda > 0 and kernel exponent k.
 *
 * The natural window is 0 < k < N-1.  We additionally accept the upper
 * endpoint k = N-1 ("borderline"): there the boundary kernel |.|^{-k} is no
 * longer locally integrable on R^{N-1} and the composition constant C(N,1,k)
 * diverges, but the composed boundary kernel |.|^{-(k-1)} = |.|^{-(N-2)}
 * stays integrable.  Operators that exist only in composed form at the
 * borderline document the convention in radial_ops.hpp.
 */
struct ProblemParams {
    int N = 3;          // ambient dimension
    double k = 1.5;     // kernel exponent, 0 < k <= N-1
    double p = 2.0;     // boundary power, p > 0
    double lambda = 1.0;// coupling, lambda >= 0 (0 switches the nonlinearity off)

    void validate() const;

    int boundary_dim() const { return N - 1; }

    // k == N-1 up to relative tolerance
    bool k_borderline() const {
        return k > (N - 1) * (1.0 - kCriticalRelTol);
    }
};

enum class RegimeTag {
    NonexistenceKSmall,        // k <= 1: no positive solutions for any p, lambda
    NonexistenceSubcritical,   // k > 1, p < p*
    CriticalPStarNoLpSolution, // p == p*: no solutions with trace in L^p
    ExistenceSupercritical,    // p > p*
};

enum class RegularFlag {
    NoRegular,              // p < p**
    RegularCriticalBubbles, // p == p**: regular solutions are exactly the bubbles
    RegularExists,          // p > p**
};

struct Regime {
    RegimeTag tag;
    // Regular-solution status; only meaningful when k > 1 and a solution class
    // exists, but always populated (vacuous otherwise) so the type is total.
    RegularFlag regular;
};

std::string to_string(RegimeTag t);
std::string to_string(RegularFlag f);

struct CriticalExponents {
    double p_star;      // (N-1)/(k-1)
    double p_star_star; // 2*(N-1)/(k-1) - 1
};

// Requires k > 1; rejects k <= 1 where the exponents are undefined.
CriticalExponents critical_exponents(const ProblemParams& params);

// Total on valid ProblemParams; partitions (k,p) space with boundaries at
// k = 1, p = p* and p = p** (critical comparisons at kCriticalRelTol).
Regime classify_regime(const ProblemParams& params);

} // namespace halfriesz

#endif
