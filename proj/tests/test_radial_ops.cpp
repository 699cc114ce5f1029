#include <doctest.h>

#include <cmath>
#include <numbers>
#include <span>

#include "halfriesz/mc_oracle.hpp"
#include "halfriesz/radial_ops.hpp"
#include "halfriesz/special.hpp"

using namespace halfriesz;

namespace {
const RadialGrid kGrid = RadialGrid::geometric(1e-4, 1e4, 161);

RadialFn bump(double scale = 1.0, double decay = 3.0) {
    return RadialFn::from_function(kGrid,
                                   [=](double s) { return scale * std::pow(1.0 + s, -decay); });
}
} // namespace

TEST_CASE("zero input maps to zero through every operator") {
    const RadialFn z = RadialFn::zero(kGrid);
    CHECK(riesz_potential_radial(z, 1.0, 2).is_zero());
    CHECK(riesz_apply_at(z, 1.0, 2, 1.0) == 0.0);
    CHECK(lifting_J(z, 1.0, 3, 0.5, 0.7) == 0.0);
    const ProblemParams P{3, 1.5, 2.0, 1.0};
    CHECK(boundary_operator_H(z, P).is_zero());
    CHECK(composed_trace_operator(z, P).is_zero());
}

TEST_CASE("pure powers are eigenfunctions with the composition constant") {
    // d = 2
    const RadialFn pw = RadialFn::pure_power(kGrid, 1.0, 1.5);
    const double c_ref = riesz_composition_constant(3, 1.0, 1.5).value;
    for (double r : {0.5, 1.0, 2.0}) {
        const double got = riesz_apply_at(pw, 1.0, 2, r, 1e-9);
        CHECK(got == doctest::Approx(c_ref * std::pow(r, -0.5)).epsilon(1e-7));
    }
    // d = 3
    const RadialFn pw3 = RadialFn::pure_power(kGrid, 2.0, 2.0);
    const double c3 = riesz_composition_constant(4, 1.0, 2.0).value;
    CHECK(riesz_apply_at(pw3, 1.0, 3, 1.3, 1e-9) ==
          doctest::Approx(2.0 * c3 * std::pow(1.3, -1.0)).epsilon(1e-7));
}

TEST_CASE("additivity and positivity") {
    const RadialFn f1 = bump(1.0, 3.0), f2 = bump(0.5, 4.0);
    const RadialFn sum = RadialFn::from_function(
        kGrid, [&](double s) { return f1(s) + f2(s); });
    for (double r : {0.3, 1.0, 5.0}) {
        const double a = riesz_apply_at(f1, 1.0, 2, r) + riesz_apply_at(f2, 1.0, 2, r);
        const double b = riesz_apply_at(sum, 1.0, 2, r);
        CHECK(b == doctest::Approx(a).epsilon(1e-6));
        CHECK(b > 0.0);
    }
}

TEST_CASE("monotonicity: ordered inputs give ordered outputs") {
    const RadialFn small = bump(1.0, 3.0), big = bump(1.6, 3.0);
    const ProblemParams P{3, 1.5, 2.0, 1.0};
    for (double r : {0.2, 1.0, 4.0}) {
        CHECK(riesz_apply_at(small, 0.5, 2, r) <= riesz_apply_at(big, 0.5, 2, r));
        CHECK(composed_trace_at(small, P, r) <= composed_trace_at(big, P, r));
    }
}

TEST_CASE("tail exponents propagate analytically") {
    const RadialFn f = bump(1.0, 3.0); // tail exponent 3
    const RadialFn out = riesz_potential_radial(f, 1.0, 2);
    // min(tau - alpha, d - alpha) = min(2, 1) = 1
    CHECK(out.tail().exponent == doctest::Approx(1.0).epsilon(1e-12));
    out.check_tail_consistency();

    const RadialFn slow = RadialFn::pure_power(kGrid, 1.0, 1.4);
    const RadialFn out2 = riesz_potential_radial(slow, 1.0, 2);
    CHECK(out2.tail().exponent == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("weighted integrability violations are named") {
    // tail too heavy for the order
    const RadialFn heavy = RadialFn::pure_power(kGrid, 1.0, 0.8);
    CHECK_THROWS_WITH_AS((void)riesz_apply_at(heavy, 1.0, 2, 1.0),
                         doctest::Contains("tail exponent"), std::domain_error);
    // origin too singular for the dimension
    const RadialFn sharp(kGrid, std::vector<double>(kGrid.size(), 1.0), {1.0, 3.0}, {1.0, 2.5});
    CHECK_THROWS_WITH_AS((void)riesz_apply_at(sharp, 1.0, 2, 1.0),
                         doctest::Contains("origin exponent"), std::domain_error);
}

TEST_CASE("boundary convolution H") {
    const ProblemParams P{3, 1.5, 5.0, 1.0};
    // trace shaped like the envelope (1+s)^{-(k-1)}: p(k-1) > N-1 holds
    const RadialFn v = bump(1.0, 0.5);
    const RadialFn H = boundary_operator_H(v, P);
    // bounded multiple of (1+r)^{-k} across the grid
    double sup = 0.0;
    for (size_t i = 0; i < kGrid.size(); ++i)
        sup = std::max(sup, H.values()[i] * std::pow(1.0 + kGrid.nodes[i], P.k));
    CHECK(std::isfinite(sup));
    CHECK(sup > 0.0);
    // borderline kernel exponent is rejected, the composed route exists only
    CHECK_THROWS_WITH_AS((void)boundary_operator_H(v, {3, 2.0, 4.0, 1.0}),
                         doctest::Contains("composed"), std::domain_error);
}

TEST_CASE("H cross-checked by the Monte Carlo oracle") {
    const ProblemParams P{3, 1.5, 5.0, 1.0};
    const RadialFn v = bump(1.0, 0.5);
    const double r_target = 2.0;
    const double direct = boundary_operator_H(v, P, 1e-9)(r_target);

    auto density = [&](double s) { return std::pow(v(s), P.p); };
    auto f = [&](std::span<const double> y) {
        const double ry = std::hypot(y[0], y[1]);
        const double dx = std::hypot(y[0] - r_target, y[1]);
        if (dx == 0.0) return 0.0;
        return density(ry) * std::pow(dx, -P.k);
    };
    const auto near_x = mc_integral_oracle(f, McDomain::ball({r_target, 0.0}, 0.5, -P.k),
                                           400'000, 31);
    const auto rest = mc_integral_oracle(
        [&](std::span<const double> y) {
            return std::hypot(y[0] - r_target, y[1]) >= 0.5 ? f(y) : 0.0;
        },
        McDomain::annulus({0.0, 0.0}, 1e-4, 3e3, -2.0), 400'000, 37);
    const double est = near_x.estimate + rest.estimate;
    const double err = 3.0 * std::hypot(near_x.stderr_est, rest.stderr_est);
    INFO("direct=", direct, " mc=", est, " 3sigma=", err);
    CHECK(std::abs(direct - est) <= std::max(err, 1e-3 * direct));
}

TEST_CASE("lifting trace identity and far field") {
    const RadialFn f = bump(1.0, 3.0);
    for (double r : {0.4, 1.0, 2.5}) {
        CHECK(lifting_J(f, 1.0, 3, r, 0.0) ==
              doctest::Approx(riesz_apply_at(f, 1.0, 2, r)).epsilon(1e-8));
    }
    // dominated far field: J ~ x_N^{-(N-1-alpha)} * total mass
    const double j2 = lifting_J(f, 1.0, 3, 0.0, 1e2);
    const double j3 = lifting_J(f, 1.0, 3, 0.0, 1e3);
    CHECK(j3 / j2 == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("composed operator collapses the nested double integral") {
    // Independent route: H then the 1-lift trace, no composition constant
    // anywhere.  Must match the collapsed single-kernel form within the
    // nested quadrature budget.
    const ProblemParams P{3, 1.5, 5.0, 1.0};
    const RadialFn v = bump(1.0, 0.5);
    const RadialFn H = boundary_operator_H(v, P, 1e-9);
    const double prefactor = 2.0 * P.lambda / ((P.N - 2) * sphere_area(P.N));
    for (double r : {0.5, 1.0}) {
        const double nested = prefactor * riesz_apply_at(H, 1.0, 2, r, 1e-8);
        const double collapsed = composed_trace_at(v, P, r, 1e-8);
        CHECK(collapsed == doctest::Approx(nested).epsilon(1e-2));
    }
}

TEST_CASE("composed operator preconditions") {
    const RadialFn v = bump(1.0, 0.5);
    CHECK_THROWS_WITH_AS((void)composed_trace_at(v, {3, 0.9, 2.0, 1.0}, 1.0),
                         doctest::Contains("k <= 1"), std::domain_error);
    // tail condition p tau + (k-1) > N-1
    const RadialFn slow = RadialFn::pure_power(kGrid, 1.0, 0.2);
    CHECK_THROWS_WITH_AS((void)composed_trace_at(slow, {3, 1.5, 2.0, 1.0}, 1.0),
                         doctest::Contains("tail condition"), std::domain_error);
}

TEST_CASE("truncated double kernel") {
    const ProblemParams P{3, 1.5, 2.0, 1.0};
    // monotone nondecreasing in R
    const double k8 = truncated_kernel_KR(1.0, 2.0, 8.0, P);
    const double k16 = truncated_kernel_KR(1.0, 2.0, 16.0, P);
    const double k64 = truncated_kernel_KR(1.0, 2.0, 64.0, P);
    CHECK(k8 <= k16);
    CHECK(k16 <= k64);
    // converges toward the full-space composition value
    const double full = riesz_composition_constant(3, 1.0, P.k).value * std::pow(1.0, -(P.k - 1.0));
    CHECK(std::abs(k64 - full) / full <= 0.05);

    CHECK_THROWS_AS((void)truncated_kernel_KR(1.0, 2.0, 8.0, {4, 1.5, 2.0, 1.0}),
                    std::domain_error);
    CHECK_THROWS_AS((void)truncated_kernel_KR(1.0, 2.0, 8.0, {3, 2.0, 4.0, 1.0}),
                    std::domain_error);
    CHECK_THROWS_AS((void)truncated_kernel_KR(1.0, 2.0, 0.5, P), std::domain_error);
}

TEST_CASE("truncated kernel against the Monte Carlo oracle near the window edge") {
    // kernel mass concentrates at y' = z' as k approaches the boundary
    const ProblemParams P{3, 1.9, 2.0, 1.0};
    const double R = 8.0;
    const double direct = truncated_kernel_KR(1.0, 2.0, R, P, 1e-7);

    auto f = [&](std::span<const double> y) {
        const double dx = std::hypot(y[0] - 1.0, y[1]);
        const double dz = std::hypot(y[0] - 2.0, y[1]);
        if (dx == 0.0 || dz == 0.0 || std::hypot(y[0], y[1]) > R) return 0.0;
        return std::pow(dx, -1.0) * std::pow(dz, -P.k);
    };
    auto outside = [](std::span<const double> y, double cx, double cut) {
        return std::hypot(y[0] - cx, y[1]) >= cut;
    };
    const auto near_x = mc_integral_oracle(
        [&](std::span<const double> y) { return outside(y, 2.0, 0.4) ? f(y) : 0.0; },
        McDomain::ball({1.0, 0.0}, 0.4, -1.0), 400'000, 53);
    const auto near_z = mc_integral_oracle(
        [&](std::span<const double> y) { return outside(y, 1.0, 0.4) ? f(y) : 0.0; },
        McDomain::ball({2.0, 0.0}, 0.4, -1.9), 400'000, 59);
    const auto rest = mc_integral_oracle(
        [&](std::span<const double> y) {
            return (outside(y, 1.0, 0.4) && outside(y, 2.0, 0.4)) ? f(y) : 0.0;
        },
        McDomain::ball({0.0, 0.0}, R), 600'000, 61);
    const double est = near_x.estimate + near_z.estimate + rest.estimate;
    const double sigma = std::sqrt(near_x.stderr_est * near_x.stderr_est +
                                   near_z.stderr_est * near_z.stderr_est +
                                   rest.stderr_est * rest.stderr_est);
    INFO("direct=", direct, " mc=", est, " sigma=", sigma);
    CHECK(std::abs(direct - est) <= 3.0 * sigma);
}

TEST_CASE("kernel matrix agrees with the adaptive route") {
    const ProblemParams P{3, 2.0, 4.0, 1e-3};
    const auto grid = RadialGrid::geometric(1e-3, 1e3, 145);
    const RadialFn v = RadialFn::from_function(
        grid, [](double s) { return 0.1 * std::pow(1.0 + s * s, -0.5); });
    ComposedKernelMatrix matrix(grid, P, std::numeric_limits<double>::infinity());
    const auto applied = matrix.apply(v.pow(P.p));
    const double coupling = composed_coupling(P);
    for (size_t i : {size_t{10}, size_t{72}, size_t{120}}) {
        const double adaptive = composed_trace_at(v, P, grid.nodes[i], 1e-9);
        CHECK(coupling * applied[i] == doctest::Approx(adaptive).epsilon(2e-2));
    }
}
