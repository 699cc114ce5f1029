#include "halfriesz/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace halfriesz {

namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_fn: argument must be > 0, got " + std::to_string(x));
    // Recurrence down to [1,2) keeps the Lanczos series in its sweet spot.
    double shift = 1.0;
    while (x < 1.0) {
        shift /= x;
        x += 1.0;
    }
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    const double sqrt2pi = std::sqrt(2.0 * std::numbers::pi);
    return shift * sqrt2pi * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

double sphere_area(int N) {
    if (N < 2) throw std::domain_error("sphere_area: N >= 2 required, got " + std::to_string(N));
    return 2.0 * std::pow(std::numbers::pi, N / 2.0) / gamma_fn(N / 2.0);
}

double fundamental_solution_radius(int N, double radius) {
    if (N < 3) throw std::domain_error("fundamental_solution: N >= 3 required");
    if (!(radius > 0.0))
        throw std::domain_error("fundamental_solution: singular at the origin (|x| = 0)");
    return std::pow(radius, 2.0 - N) / ((N - 2) * sphere_area(N));
}

namespace {
double dist(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}
} // namespace

double fundamental_solution(int N, std::span<const double> x) {
    if (static_cast<int>(x.size()) != N)
        throw std::invalid_argument("fundamental_solution: point dimension mismatch");
    double s = 0.0;
    for (double c : x) s += c * c;
    return fundamental_solution_radius(N, std::sqrt(s));
}

double neumann_green(int N, std::span<const double> x, std::span<const double> y) {
    if (static_cast<int>(x.size()) != N || static_cast<int>(y.size()) != N)
        throw std::invalid_argument("neumann_green: point dimension mismatch");
    if (x[N - 1] < 0.0 || y[N - 1] < 0.0)
        throw std::domain_error("neumann_green: points must lie in the closed upper half space");
    const double r_direct = dist(x, y);
    std::vector<double> xbar(x.begin(), x.end());
    xbar[N - 1] = -xbar[N - 1];
    const double r_reflect = dist(xbar, y);
    return fundamental_solution_radius(N, r_direct) + fundamental_solution_radius(N, r_reflect);
}

CompositionConstant riesz_composition_constant(int N, double a, double b) {
    if (N < 3) throw std::domain_error("riesz_composition_constant: N >= 3 required");
    const double d = N - 1;
    std::ostringstream bad;
    if (!(a > 0.0)) bad << "0 < a violated (a=" << a << ")";
    else if (!(a < b)) bad << "a < b violated (a=" << a << ", b=" << b << ")";
    else if (!(b < d)) bad << "b < N-1 violated (b=" << b << ", N-1=" << d << ")";
    if (const auto msg = bad.str(); !msg.empty())
        throw std::domain_error("riesz_composition_constant: " + msg);

    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, double> cache;
    {
        std::scoped_lock lock(mu);
        if (auto it = cache.find({N, a, b}); it != cache.end()) return {N, a, b, it->second};
    }
    const double value = std::pow(std::numbers::pi, d / 2.0) * gamma_fn(a / 2.0) *
                         gamma_fn((d - b) / 2.0) * gamma_fn((b - a) / 2.0) /
                         (gamma_fn((d - a) / 2.0) * gamma_fn(b / 2.0) *
                          gamma_fn((d - (b - a)) / 2.0));
    {
        std::scoped_lock lock(mu);
        cache.insert({{N, a, b}, value});
    }
    return {N, a, b, value};
}

} // namespace halfriesz
