#include <doctest.h>

#include <cmath>

#include "halfriesz/analysis.hpp"
#include "halfriesz/quadrature.hpp"
#include "halfriesz/radial_ops.hpp"

using namespace halfriesz;

TEST_CASE("descent recurrence at the reference point") {
    const auto tr = bootstrap_sequence({3, 2.0, 1.5, 1.0}, 64);
    CHECK(tr.exact_arithmetic);
    REQUIRE(tr.gamma.size() >= 3);
    CHECK(tr.gamma[0] == 1.0);
    CHECK(tr.gamma[1] == 0.5);
    CHECK(tr.gamma[2] == -0.25);
    CHECK(tr.gamma_exact[0] == "1");
    CHECK(tr.gamma_exact[1] == "1/2");
    CHECK(tr.gamma_exact[2] == "-1/4");
    CHECK(tr.verdict == BootstrapVerdict::CertifiedNonexistence);
    REQUIRE(tr.stop_index.has_value());
    CHECK(*tr.stop_index == 1);
    CHECK(tr.limit == BootstrapLimit::MinusInfinity);
}

TEST_CASE("descent for small powers converges toward the negative limit") {
    const auto tr = bootstrap_sequence({3, 2.0, 0.5, 1.0}, 64);
    CHECK(tr.limit == BootstrapLimit::FiniteLimit);
    CHECK(tr.limit_value == doctest::Approx(-2.0)); // (N-k)/(p-1)
    // the limit is negative, so the certificate fires first
    CHECK(tr.verdict == BootstrapVerdict::CertifiedNonexistence);
    for (size_t i = 0; i + 1 < tr.gamma.size(); ++i) CHECK(tr.gamma[i + 1] < tr.gamma[i]);
}

TEST_CASE("descent at p = 1 is arithmetic") {
    const auto tr = bootstrap_sequence({3, 2.0, 1.0, 1.0}, 64);
    REQUIRE(tr.gamma.size() >= 3);
    CHECK(tr.gamma[1] - tr.gamma[0] == doctest::Approx(-1.0)); // k - N
    CHECK(tr.verdict == BootstrapVerdict::CertifiedNonexistence);
}

TEST_CASE("no certificate at or above the critical power") {
    // at p = p* the starting value is the fixed point of the affine map
    const auto at_crit = bootstrap_sequence({3, 2.0, 2.0, 1.0}, 64);
    CHECK(at_crit.verdict == BootstrapVerdict::NoCertificate);
    CHECK(at_crit.limit == BootstrapLimit::StationaryAtStart);
    for (double g : at_crit.gamma) CHECK(g == doctest::Approx(1.0).epsilon(1e-12));

    const auto super = bootstrap_sequence({3, 2.0, 4.0, 1.0}, 64);
    CHECK(super.verdict == BootstrapVerdict::NoCertificate);
    CHECK(super.limit == BootstrapLimit::PlusInfinity);
    CHECK(super.gamma[1] > super.gamma[0]);

    CHECK_THROWS_AS((void)bootstrap_sequence({3, 0.9, 1.5, 1.0}, 64), std::domain_error);
}

TEST_CASE("irrational parameters fall back to documented floating point") {
    const auto tr = bootstrap_sequence({3, 1.0 + std::numbers::pi / 4.0, 1.5, 1.0}, 64);
    CHECK_FALSE(tr.exact_arithmetic);
    CHECK(tr.verdict == BootstrapVerdict::CertifiedNonexistence);
}

TEST_CASE("weighted kernel bound: window enforcement and stability") {
    const auto grid = RadialGrid::geometric(1e-2, 1e2, 25);
    // inside the window at N=3
    const auto rep = verify_estimate_stan1(1.5, 4.0, 3, grid);
    CHECK(std::isfinite(rep.sup_ratio));
    CHECK(rep.sup_ratio > 0.0);
    const auto fine = verify_estimate_stan1(1.5, 4.0, 3, grid.refined());
    CHECK(std::abs(fine.sup_ratio / rep.sup_ratio - 1.0) <= 0.10);

    // inside the window at N=4 with the same kernel exponent the half-space
    // story uses at N=3
    const auto rep4 = verify_estimate_stan1(2.0, 4.0, 4, grid);
    CHECK(std::isfinite(rep4.sup_ratio));

    // window violations are named: the borderline k = N-1 is out
    CHECK_THROWS_WITH_AS((void)verify_estimate_stan1(2.0, 4.0, 3, grid),
                         doctest::Contains("k < N-1"), std::domain_error);
    CHECK_THROWS_WITH_AS((void)verify_estimate_stan1(0.9, 4.0, 3, grid),
                         doctest::Contains("1 < k"), std::domain_error);
    CHECK_THROWS_WITH_AS((void)verify_estimate_stan1(1.5, 1.8, 3, grid),
                         doctest::Contains("beta"), std::domain_error);
}

TEST_CASE("weighted kernel bound at the origin against plain quadrature") {
    const double k = 1.5, beta = 4.0;
    const auto grid = RadialGrid::geometric(1e-2, 1e2, 9);
    const auto rep = verify_estimate_stan1(k, beta, 3, grid);
    // LHS(0) = 2 pi int t^{1-k} (1+t)^{-beta} dt, computed independently
    auto f = [&](double t) { return std::pow(t, 1.0 - k) * std::pow(1.0 + t, -beta); };
    std::vector<SingularityHint> hints{{0.0, k - 1.0}};
    const double lhs0 =
        2.0 * std::numbers::pi * integrate_or_throw(f, 0.0, 1e6, 1e-10, hints);
    // ratios[] follows grid order; compare against the first node near zero
    const double lhs_first = rep.ratios.front() / std::pow(1.0 + grid.nodes.front(), k);
    CHECK(lhs_first == doctest::Approx(lhs0).epsilon(2e-3));
}

TEST_CASE("weighted kernel bound decreases in beta") {
    const auto grid = RadialGrid::geometric(0.1, 10.0, 7);
    double prev = 1e300;
    for (double beta : {2.5, 3.0, 4.0, 6.0}) {
        const auto rep = verify_estimate_stan1(1.5, beta, 3, grid);
        CHECK(rep.sup_ratio < prev);
        prev = rep.sup_ratio;
    }
}

TEST_CASE("lifted weight bound: finite, boundary and interior samples") {
    std::vector<std::pair<double, double>> samples;
    for (double t : {0.0, 0.3, 1.0, 10.0, 100.0, 1000.0}) {
        samples.push_back({t, 0.0});
        samples.push_back({0.0, t});
        samples.push_back({t, 0.5 * t + 0.1});
    }
    const auto rep = verify_estimate_stan6(1.5, 3, samples);
    CHECK(std::isfinite(rep.sup_ratio));
    CHECK(rep.sup_ratio > 0.0);

    // the ratio flattens in the far field
    const auto far2 = verify_estimate_stan6(1.5, 3, {{100.0, 0.0}});
    const auto far3 = verify_estimate_stan6(1.5, 3, {{1000.0, 0.0}});
    CHECK(std::abs(far3.sup_ratio / far2.sup_ratio - 1.0) <= 0.25);

    CHECK_THROWS_AS((void)verify_estimate_stan6(0.9, 3, samples), std::domain_error);
    // borderline k = N-1 is accepted here: the integral itself stays finite
    const auto edge = verify_estimate_stan6(2.0, 3, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK(std::isfinite(edge.sup_ratio));
}

TEST_CASE("Hoelder bound for the lifting operator") {
    const auto grid = RadialGrid::geometric(1e-3, 1e3, 121);
    const RadialFn bump =
        RadialFn::from_function(grid, [](double s) { return std::pow(1.0 + s, -3.0); });

    const auto pairs = holder_pair_ladder({1.0, 0.0}, 10.0, 4, 2);
    const auto rep = holder_check(bump, 1.0, 4.0, 3, pairs);
    CHECK(rep.gamma == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::isfinite(rep.emp_const));
    CHECK(rep.emp_const > 0.0);
    CHECK(rep.emp_exponent >= rep.gamma - 0.05);

    // zero input
    const auto zrep = holder_check(RadialFn::zero(grid), 1.0, 4.0, 3, pairs);
    CHECK(zrep.emp_const == 0.0);

    // pairs straddling the boundary plane
    std::vector<std::pair<PointN, PointN>> straddle{
        {{0.5, 0.0}, {0.5, 0.25}}, {{1.0, 0.0}, {1.0, 1.0}}, {{2.0, 0.1}, {2.0, 0.0}}};
    const auto srep = holder_check(bump, 1.0, 4.0, 3, straddle);
    CHECK(std::isfinite(srep.emp_const));

    // window violations
    CHECK_THROWS_AS((void)holder_check(bump, 1.0, 1.5, 3, pairs), std::domain_error);
    const RadialFn heavy = RadialFn::pure_power(grid, 1.0, 0.4);
    CHECK_THROWS_AS((void)holder_check(heavy, 1.0, 4.0, 3, pairs), std::domain_error);
}

TEST_CASE("solver parameter pack keeps the Hoelder exponent in (0,1)") {
    // s inside ((N-1)/(N-k), (N-1)/(N-k-1)) gives q > N-1 and gamma in (0,1)
    for (double k : {1.2, 1.5, 1.8}) {
        const int N = 3;
        const double lo = (N - 1.0) / (N - k), hi = (N - 1.0) / (N - k - 1.0);
        for (double frac : {0.25, 0.5, 0.75}) {
            const double s = lo + frac * (hi - lo);
            const double q = (N - 1.0) * s / (N - 1.0 - (N - k - 1.0) * s);
            const double gamma = 1.0 - (N - 1.0) / q;
            CHECK(q > N - 1.0);
            CHECK(gamma > 0.0);
            CHECK(gamma < 1.0);
        }
    }
}

TEST_CASE("Sobolev ratio for the boundary Riesz potential") {
    const auto grid = RadialGrid::geometric(1e-3, 1e3, 121);
    auto bump = [](double rho) {
        return [rho](double t) { return std::pow(1.0 + t / rho, -3.0); };
    };
    const RadialFn f = RadialFn::from_function(grid, bump(1.0));
    const double ratio = hls_check(f, 1.5, 1.0, 3);
    CHECK(std::isfinite(ratio));
    CHECK(ratio > 0.0);

    // zero convention
    CHECK(hls_check(RadialFn::zero(grid), 1.5, 1.0, 3) == 0.0);

    // dilation invariance of the sharp scaling
    for (double rho : {0.5, 2.0}) {
        const RadialFn g = RadialFn::from_function(grid, bump(rho));
        CHECK(hls_check(g, 1.5, 1.0, 3) == doctest::Approx(ratio).epsilon(1e-2));
    }

    // refinement stability
    const RadialFn fine = RadialFn::from_function(grid.refined(), bump(1.0));
    CHECK(hls_check(fine, 1.5, 1.0, 3) == doctest::Approx(ratio).epsilon(1e-2));

    CHECK_THROWS_AS((void)hls_check(f, 2.5, 1.0, 3), std::domain_error);
}

TEST_CASE("far-field lower bound on candidate traces") {
    const auto grid = RadialGrid::geometric(1e-2, 1e2, 81);
    const ProblemParams P{3, 2.0, 4.0, 1.0};
    // exact-solution trace: tau = 1/3 <= k-1, so r^{-tau} >= r^{1-k} out far
    const RadialFn good = RadialFn::pure_power(grid, 0.6, 1.0 / 3.0);
    CHECK(lower_bound_check(good, P));
    // zero trace is not a positive solution
    CHECK_FALSE(lower_bound_check(RadialFn::zero(grid), P));
    // an artificially truncated profile fails out far
    const RadialFn cut = RadialFn::from_function(
        grid, [](double r) { return r < 5.0 ? 1.0 : std::pow(r / 5.0, -6.0); });
    CHECK_FALSE(lower_bound_check(cut, P));
}
