#include "halfriesz/angular.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "halfriesz/quadrature.hpp"
#include "halfriesz/special.hpp"

namespace halfriesz {

namespace {

/*
 * All branches work with
 *   amb = (r-s)^2 + h^2   (the squared distance at theta = 0)
 *   apb = (r+s)^2 + h^2   (at theta = pi)
 *   b   = 2 r s
 * so the near-diagonal regime amb -> 0 never goes through a cancelling
 * difference: a - b cos(theta) = amb + 2 b sin^2(theta/2).
 */

// complete elliptic integral K via the complementary modulus squared;
// asymptotic branch keeps accuracy when kp2 underflows toward 0
double ellint_K_comp(double kp2) {
    if (kp2 < 1e-12) {
        // K = ln(4/k') (1 + O(k'^2))
        return 0.5 * std::log(16.0 / kp2);
    }
    return std::comp_ellint_1(std::sqrt(std::max(0.0, 1.0 - kp2)));
}

// int_0^{2pi} (amb + 2 b sin^2(t/2))^{-1/2} dt = 4/sqrt(apb) K(k), k^2 = 2b/apb
double d2_beta1(double amb, double apb) {
    return 4.0 / std::sqrt(apb) * ellint_K_comp(amb / apb);
}

// int_0^{2pi} (...)^{-1} dt = 2 pi / sqrt(amb * apb)
double d2_beta2(double amb, double apb) {
    return 2.0 * std::numbers::pi / std::sqrt(amb * apb);
}

// d = 3: substitute u = amb + b(1 - cos t); elementary antiderivative.
double d3_any(double beta, double amb, double apb, double b) {
    if (std::abs(beta - 2.0) < 1e-13)
        return 2.0 * std::numbers::pi / b * std::log(apb / amb);
    const double e = 1.0 - beta / 2.0;
    return 2.0 * std::numbers::pi * (std::pow(apb, e) - std::pow(amb, e)) / (b * e);
}

double adaptive_angular(int d, double beta, double amb, double b, double tol) {
    // (amb + 2b sin^2(t/2))^{-beta/2}, peaked at t = 0 with width sqrt(amb/b)
    auto f = [&](double t) {
        const double sn = std::sin(0.5 * t);
        const double q = amb + 2.0 * b * sn * sn;
        double v = std::pow(q, -beta / 2.0);
        if (d > 2) v *= std::pow(std::sin(t), d - 2);
        return v;
    };
    std::vector<SingularityHint> hints{{0.0, std::min(0.9, std::max(0.25, beta - (d - 1)))}};
    const double val = integrate_or_throw(f, 0.0, std::numbers::pi, tol, hints);
    return d == 2 ? 2.0 * val : sphere_area(d - 1) * val;
}

} // namespace

double angular_diagonal_exponent(int d, double beta) {
    const double e = beta - (d - 1);
    if (e > 0.0) return e;
    if (e == 0.0) return 0.25; // logarithmic: grade a little, integrable
    return 0.0;
}

double angular_kernel(int d, double beta, double r, double s, double lift_height) {
    if (d < 2) throw std::domain_error("angular_kernel: d >= 2 required");
    if (r < 0.0 || s < 0.0 || lift_height < 0.0)
        throw std::domain_error("angular_kernel: radii and lift height must be nonnegative");
    const double h2 = lift_height * lift_height;
    if (r == 0.0 && s == 0.0 && h2 == 0.0)
        throw std::domain_error("angular_kernel: r = s = 0 is singular");

    const double diff = r - s;
    const double amb = diff * diff + h2;
    const double sum = r + s;
    const double apb = sum * sum + h2;
    const double b = 2.0 * r * s;

    if (b == 0.0) // one radius vanishes: constant integrand over the sphere
        return sphere_area(d) * std::pow(apb, -beta / 2.0);

    if (amb == 0.0 && beta >= d - 1) {
        std::ostringstream os;
        os << "angular_kernel: divergent diagonal at r = s = " << r << " (beta=" << beta
           << " >= d-1=" << d - 1 << ")";
        throw quadrature_error(os.str());
    }

    if (d == 2 && std::abs(beta - 1.0) < 1e-13) return d2_beta1(amb, apb);
    if (d == 2 && std::abs(beta - 2.0) < 1e-13) return d2_beta2(amb, apb);
    if (d == 3) return d3_any(beta, amb, apb, b);
    return adaptive_angular(d, beta, amb, b, 1e-10);
}

} // namespace halfriesz
