#include "halfriesz/mc_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "halfriesz/special.hpp"

namespace halfriesz {

McDomain McDomain::ball(std::vector<double> center, double radius, double radial_exponent) {
    if (!(radius > 0.0)) throw std::invalid_argument("McDomain::ball: radius > 0 required");
    McDomain d;
    d.kind = Kind::Ball;
    d.center = std::move(center);
    d.r_outer = radius;
    d.radial_exponent = radial_exponent;
    return d;
}

McDomain McDomain::annulus(std::vector<double> center, double r_inner, double r_outer,
                           double radial_exponent) {
    if (!(0.0 <= r_inner && r_inner < r_outer))
        throw std::invalid_argument("McDomain::annulus: need 0 <= r_inner < r_outer");
    McDomain d;
    d.kind = Kind::Annulus;
    d.center = std::move(center);
    d.r_inner = r_inner;
    d.r_outer = r_outer;
    d.radial_exponent = radial_exponent;
    return d;
}

McDomain McDomain::sphere(std::vector<double> center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("McDomain::sphere: radius > 0 required");
    McDomain d;
    d.kind = Kind::Sphere;
    d.center = std::move(center);
    d.r_outer = radius;
    return d;
}

namespace {

// Uniform direction on S^{d-1} via normalized Gaussians.
void random_direction(std::mt19937_64& rng, std::span<double> dir) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& c : dir) {
            c = gauss(rng);
            norm2 += c * c;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : dir) c *= inv;
}

} // namespace

McResult mc_integral_oracle(const std::function<double(std::span<const double>)>& f,
                            const McDomain& domain, std::int64_t samples, std::uint64_t seed) {
    if (samples < 10'000)
        throw std::invalid_argument("mc_integral_oracle: at least 1e4 samples required");
    const int d = static_cast<int>(domain.center.size());
    if (d < 1) throw std::invalid_argument("mc_integral_oracle: empty center point");

    // Radius density on [r0, r1] proportional to t^{d-1+eta}; needs the
    // exponent to clear -1 at an inner radius of zero.
    const double eta = domain.radial_exponent;
    const double power = d + eta; // CDF ~ t^power
    const double r0 = domain.kind == McDomain::Kind::Annulus ? domain.r_inner : 0.0;
    const double r1 = domain.r_outer;
    if (domain.kind != McDomain::Kind::Sphere && r0 == 0.0 && power <= 0.0)
        throw std::invalid_argument(
            "mc_integral_oracle: radial_exponent makes the center non-integrable");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> point(d), dir(d);
    const double area = sphere_area(d); // |S^{d-1}| in R^d

    // Normalisation of the radial density and inverse CDF.
    const double p0 = std::pow(r0, power), p1 = std::pow(r1, power);
    auto radius_sample = [&](double u) {
        if (std::abs(power) < 1e-14) // log-uniform degenerate case
            return r0 * std::pow(r1 / r0, u);
        return std::pow(p0 + u * (p1 - p0), 1.0 / power);
    };
    // density of the sampled point in R^d: p(y) = t^{d-1+eta} * norm / area-element
    const double radial_norm =
        std::abs(power) < 1e-14 ? std::log(r1 / r0) : (p1 - p0) / power;

    // Welford accumulation: the zero-variance configurations that arise when
    // the importance density matches the integrand exactly must report a
    // zero standard error, not accumulated roundoff.
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        double weight;
        if (domain.kind == McDomain::Kind::Sphere) {
            random_direction(rng, dir);
            for (int j = 0; j < d; ++j) point[j] = domain.center[j] + r1 * dir[j];
            weight = area * std::pow(r1, d - 1); // total surface measure
        } else {
            random_direction(rng, dir);
            const double t = radius_sample(unif(rng));
            for (int j = 0; j < d; ++j) point[j] = domain.center[j] + t * dir[j];
            // p(point) = t^{d-1+eta} / (radial_norm * area); estimate adds f/p.
            weight = radial_norm * area * std::pow(t, -eta);
        }
        const double v = f(point) * weight;
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double n = static_cast<double>(samples);
    McResult out;
    out.estimate = mean;
    out.stderr_est = std::sqrt(std::max(0.0, m2 / n) / n);
    out.samples = samples;
    return out;
}

} // namespace halfriesz
