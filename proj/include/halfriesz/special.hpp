#ifndef HALFRIESZ_SPECIAL_HPP
#define HALFRIESZ_SPECIAL_HPP

#include <span>
#include <vector>

namespace halfriesz {

// Gamma function for x > 0 (Lanczos approximation, relative error well below
// 1e-12 on [0.5, 50]).  Rejects x <= 0: the reflection branch is not needed
// anywhere in this library.
double gamma_fn(double x);

// Surface area of the unit (N-1)-sphere in R^N: 2 pi^{N/2} / Gamma(N/2).
// N >= 2.
double sphere_area(int N);

// Fundamental solution of -Lap in R^N at distance |x| > 0:
//   Phi(x) = |x|^{2-N} / ((N-2) sigma_N).
double fundamental_solution(int N, std::span<const double> x);
double fundamental_solution_radius(int N, double radius);

// Neumann Green function of the upper half space, built by reflection:
//   G(x,y) = Phi(x-y) + Phi(xbar-y),  xbar = (x', -x_N).
// Both points in the closed upper half space; singular when x == y.
double neumann_green(int N, std::span<const double> x, std::span<const double> y);

/*
 * Constant of the Riesz composition identity on R^{N-1} (d = N-1):
 *
 *   int_{R^d} |x'-y'|^{-(d-a)} |y'-z'|^{-b} dy' = C(N,a,b) |x'-z'|^{-(b-a)},
 *
 * valid for 0 < a < b < d.  In terms of Gamma functions,
 *
 *   C(N,a,b) = pi^{d/2} G(a/2) G((d-b)/2) G((b-a)/2)
 *            / ( G((d-a)/2) G(b/2) G((d-b+a)/2) ),
 *
 * which is the semigroup property of the Riesz kernels written without their
 * normalisation.  This closed form is pinned against an independent Monte
 * Carlo quadrature in the test suite; do not edit one without the other.
 */
struct CompositionConstant {
    int N;
    double a;
    double b;
    double value; // finite and > 0 inside the window
};

// Rejects (a,b) outside 0 < a < b < N-1, naming the violated inequality.
// Values are memoized per (N,a,b); lookups are safe from multiple threads.
CompositionConstant riesz_composition_constant(int N, double a, double b);

} // namespace halfriesz

#endif
