#include "halfriesz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "halfriesz/angular.hpp"
#include "halfriesz/radial_ops.hpp"
#include "halfriesz/special.hpp"

namespace halfriesz {

std::string to_string(BootstrapVerdict v) {
    switch (v) {
        case BootstrapVerdict::CertifiedNonexistence: return "CertifiedNonexistence";
        case BootstrapVerdict::NoCertificate: return "NoCertificate";
        case BootstrapVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string to_string(BootstrapLimit l) {
    switch (l) {
        case BootstrapLimit::FiniteLimit: return "FiniteLimit";
        case BootstrapLimit::MinusInfinity: return "MinusInfinity";
        case BootstrapLimit::StationaryAtStart: return "StationaryAtStart";
        case BootstrapLimit::PlusInfinity: return "PlusInfinity";
    }
    return "?";
}

namespace {

// Minimal checked int64 rational; the descent certificate must not depend
// on rounding, so the recurrence runs exactly whenever k and p are
// recognisably rational and the numbers stay inside int64.
struct Rational {
    long long num = 0, den = 1;
};

bool mul_ok(long long a, long long b, long long& out) {
    return !__builtin_mul_overflow(a, b, &out);
}
bool add_ok(long long a, long long b, long long& out) {
    return !__builtin_add_overflow(a, b, &out);
}

bool normalize(Rational& r) {
    if (r.den == 0) return false;
    if (r.den < 0) {
        r.num = -r.num;
        r.den = -r.den;
    }
    const long long g = std::gcd(std::llabs(r.num), r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return true;
}

bool rat_mul(const Rational& a, const Rational& b, Rational& out) {
    if (!mul_ok(a.num, b.num, out.num) || !mul_ok(a.den, b.den, out.den)) return false;
    return normalize(out);
}

bool rat_add(const Rational& a, const Rational& b, Rational& out) {
    long long n1, n2, d;
    if (!mul_ok(a.num, b.den, n1) || !mul_ok(b.num, a.den, n2) || !mul_ok(a.den, b.den, d))
        return false;
    if (!add_ok(n1, n2, out.num)) return false;
    out.den = d;
    return normalize(out);
}

// Continued-fraction rationalisation; succeeds when x is within 1e-14
// relative of a fraction with denominator <= 1e6.
bool rationalize(double x, Rational& out) {
    const long long max_den = 1'000'000;
    double a = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int i = 0; i < 48; ++i) {
        const double fl = std::floor(a);
        if (std::abs(fl) > 4e18) return false;
        const long long ai = static_cast<long long>(fl);
        long long p2, q2, t;
        if (!mul_ok(ai, p1, t) || !add_ok(t, p0, p2)) return false;
        if (!mul_ok(ai, q1, t) || !add_ok(t, q0, q2)) return false;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::abs(static_cast<double>(p1) / q1 - x) <= 1e-14 * std::max(1.0, std::abs(x))) {
            out = {p1, q1};
            return normalize(out);
        }
        const double frac = a - fl;
        if (frac < 1e-15) break;
        a = 1.0 / frac;
    }
    return false;
}

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r.num;
    if (r.den != 1) os << "/" << r.den;
    return os.str();
}

} // namespace

BootstrapTrace bootstrap_sequence(const ProblemParams& params, int n_max) {
    params.validate();
    if (params.k <= 1.0)
        throw std::domain_error("bootstrap_sequence: the descent starts at gamma_0 = k-1 > 0, "
                                "so k > 1 is required");
    if (n_max < 1) throw std::invalid_argument("bootstrap_sequence: n_max >= 1 required");

    const double N = params.N, k = params.k, p = params.p;
    const double p_star = (N - 1.0) / (k - 1.0);

    BootstrapTrace tr;
    // Limit dichotomy of the affine map g -> p g + k - N.
    if (std::abs(p - p_star) <= kCriticalRelTol * p_star) {
        tr.limit = BootstrapLimit::StationaryAtStart;
        tr.limit_value = k - 1.0;
    } else if (p > p_star) {
        tr.limit = BootstrapLimit::PlusInfinity;
    } else if (p < 1.0) {
        tr.limit = BootstrapLimit::FiniteLimit;
        tr.limit_value = (N - k) / (p - 1.0);
    } else {
        tr.limit = BootstrapLimit::MinusInfinity;
    }

    Rational rk, rp;
    bool exact = rationalize(k, rk) && rationalize(p, rp);
    Rational shift; // k - N
    if (exact) {
        Rational negN{-params.N, 1};
        exact = rat_add(rk, negN, shift);
    }

    Rational g_exact;
    if (exact) {
        Rational one{-1, 1};
        exact = rat_add(rk, one, g_exact); // k - 1
    }
    double g = k - 1.0;

    tr.exact_arithmetic = exact;
    tr.gamma.push_back(exact ? static_cast<double>(g_exact.num) / g_exact.den : g);
    if (exact) tr.gamma_exact.push_back(rat_str(g_exact));

    constexpr double kDivergedFloor = -1e6;
    for (int n = 0; n < n_max; ++n) {
        double g_next;
        if (exact) {
            Rational prod, next;
            if (rat_mul(rp, g_exact, prod) && rat_add(prod, shift, next)) {
                g_exact = next;
                g_next = static_cast<double>(next.num) / next.den;
            } else {
                // overflow: continue in doubles, recorded on the trace
                exact = false;
                tr.exact_arithmetic = false;
                g = static_cast<double>(g_exact.num) / g_exact.den;
                g_next = p * g + k - N;
            }
        } else {
            g_next = p * g + k - N;
        }
        tr.gamma.push_back(g_next);
        if (exact) tr.gamma_exact.push_back(rat_str(g_exact));

        const double g_prev = tr.gamma[tr.gamma.size() - 2];
        if (g_prev > 0.0 && g_next <= 0.0) {
            tr.stop_index = n;
            tr.verdict = BootstrapVerdict::CertifiedNonexistence;
            return tr;
        }
        if (g_next < kDivergedFloor) break; // cannot happen without a sign change first
        g = g_next;
    }
    tr.verdict = p >= p_star * (1.0 - kCriticalRelTol) ? BootstrapVerdict::NoCertificate
                                                       : BootstrapVerdict::Inconclusive;
    return tr;
}

SupRatioReport verify_estimate_stan1(double k, double beta, int N, const RadialGrid& y_grid,
                                     double tol) {
    const int d = N - 1;
    std::ostringstream bad;
    if (!(1.0 < k)) bad << "1 < k violated (k=" << k << ")";
    else if (!(k < d)) bad << "k < N-1 violated (k=" << k << ", N-1=" << d << ")";
    else if (!(d < beta)) bad << "N-1 < beta violated (beta=" << beta << ")";
    if (const auto msg = bad.str(); !msg.empty())
        throw std::domain_error("verify_estimate_stan1: " + msg);

    // weight (1+s)^{-beta} as radial data with exact-enough laws
    const auto wgrid = RadialGrid::geometric(1e-4, 1e4, 2 * y_grid.size() + 1);
    const RadialFn weight = RadialFn::from_function(
        wgrid, [&](double s) { return std::pow(1.0 + s, -beta); });

    SupRatioReport rep;
    const double alpha = d - k;
    for (double r : y_grid.nodes) {
        const double lhs = riesz_apply_at(weight, alpha, d, r, tol);
        const double ratio = lhs * std::pow(1.0 + r, k);
        rep.ratios.push_back(ratio);
        if (ratio > rep.sup_ratio) {
            rep.sup_ratio = ratio;
            rep.argmax = r;
        }
    }
    return rep;
}

SupRatioReport verify_estimate_stan6(double k, int N,
                                     const std::vector<std::pair<double, double>>& x_samples,
                                     double tol) {
    const int d = N - 1;
    std::ostringstream bad;
    if (!(1.0 < k)) bad << "1 < k violated (k=" << k << ")";
    else if (k > d * (1.0 + kCriticalRelTol))
        bad << "k <= N-1 violated (k=" << k << ", N-1=" << d << ")";
    if (const auto msg = bad.str(); !msg.empty())
        throw std::domain_error("verify_estimate_stan6: " + msg);

    const auto wgrid = RadialGrid::geometric(1e-4, 1e4, 257);
    const RadialFn weight = RadialFn::from_function(
        wgrid, [&](double s) { return std::pow(1.0 + s, -k); });

    SupRatioReport rep;
    for (const auto& [r_prime, x_N] : x_samples) {
        if (x_N < 0.0)
            throw std::domain_error("verify_estimate_stan6: samples must have x_N >= 0");
        const double lhs = lifting_J(weight, 1.0, N, r_prime, x_N, tol);
        const double ax = std::sqrt(r_prime * r_prime + x_N * x_N);
        const double ratio = lhs * std::pow(1.0 + ax, k - 1.0);
        rep.ratios.push_back(ratio);
        if (ratio > rep.sup_ratio) {
            rep.sup_ratio = ratio;
            rep.argmax = ax;
        }
    }
    return rep;
}

HolderReport holder_check(const RadialFn& f, double alpha, double q, int N,
                          const std::vector<std::pair<PointN, PointN>>& pairs, double tol) {
    const int d = N - 1;
    const double ratio = d / q;
    if (!(alpha - 1.0 < ratio && ratio < alpha)) {
        std::ostringstream os;
        os << "holder_check: window alpha-1 < (N-1)/q < alpha violated "
           << "(alpha=" << alpha << ", (N-1)/q=" << ratio << ")";
        throw std::domain_error(os.str());
    }
    // q-integrability of f via the tail exponent
    if (!f.is_zero()) {
        const double tau = f.tail().coeff == 0.0 ? std::numeric_limits<double>::infinity()
                                                 : f.tail().exponent;
        if (!(tau * q > d)) {
            std::ostringstream os;
            os << "holder_check: f outside L^q, tail exponent " << tau << " needs tau*q > N-1";
            throw std::domain_error(os.str());
        }
    }
    HolderReport rep;
    rep.gamma = alpha - ratio;
    if (f.is_zero()) return rep;

    std::vector<double> logd, logj;
    for (const auto& [x, z] : pairs) {
        const double jx = lifting_J(f, alpha, N, x.r_prime, x.x_N, tol);
        const double jz = lifting_J(f, alpha, N, z.r_prime, z.x_N, tol);
        // axisymmetric representatives: both points in the (e_1, e_N) plane
        const double dr = x.r_prime - z.r_prime, dh = x.x_N - z.x_N;
        const double dist = std::sqrt(dr * dr + dh * dh);
        if (dist == 0.0) continue;
        const double dj = std::abs(jx - jz);
        rep.emp_const = std::max(rep.emp_const, dj / std::pow(dist, rep.gamma));
        if (dj > 0.0) {
            logd.push_back(std::log(dist));
            logj.push_back(std::log(dj));
        }
    }
    // least-squares slope
    if (logd.size() >= 2) {
        const double n = static_cast<double>(logd.size());
        const double mx = std::accumulate(logd.begin(), logd.end(), 0.0) / n;
        const double my = std::accumulate(logj.begin(), logj.end(), 0.0) / n;
        double sxx = 0.0, sxy = 0.0;
        for (size_t i = 0; i < logd.size(); ++i) {
            sxx += (logd[i] - mx) * (logd[i] - mx);
            sxy += (logd[i] - mx) * (logj[i] - my);
        }
        rep.emp_exponent = sxy / sxx;
    }
    return rep;
}

std::vector<std::pair<PointN, PointN>> holder_pair_ladder(PointN x0, double delta_max,
                                                          int decades, int per_decade) {
    std::vector<std::pair<PointN, PointN>> pairs;
    const int n = decades * per_decade + 1;
    for (int i = 0; i < n; ++i) {
        const double delta = delta_max * std::pow(10.0, -static_cast<double>(i) / per_decade);
        // alternate in-plane and vertical displacements; vertical ones
        // straddle the boundary whenever x0 sits on it
        if (i % 2 == 0)
            pairs.push_back({x0, {x0.r_prime + delta, x0.x_N}});
        else
            pairs.push_back({x0, {x0.r_prime, x0.x_N + delta}});
    }
    return pairs;
}

double hls_check(const RadialFn& f, double s, double alpha, int N, double tol) {
    const int d = N - 1;
    if (!(1.0 < s && s < d / alpha)) {
        std::ostringstream os;
        os << "hls_check: window 1 < s < (N-1)/alpha violated (s=" << s
           << ", (N-1)/alpha=" << d / alpha << ")";
        throw std::domain_error(os.str());
    }
    if (f.is_zero()) return 0.0; // 0/0 guarded by convention
    const double q = d * s / (d - alpha * s);

    const double area = sphere_area(d);
    auto norm = [&](const RadialFn& g, double expo) {
        auto integrand = [&](double t) { return std::pow(g(t), expo) * std::pow(t, d - 1); };
        std::vector<SingularityHint> hints;
        const double origin_pole = g.origin().exponent * expo - (d - 1);
        if (origin_pole >= 1.0)
            throw std::domain_error("hls_check: norm divergent at the origin");
        if (origin_pole > 0.0) hints.push_back({0.0, origin_pole});
        double total = integrate_or_throw(integrand, 0.0, g.grid().r_max, tol, hints);
        if (g.tail().coeff > 0.0) {
            const double decay = g.tail().exponent * expo - (d - 1);
            if (!(decay > 1.0))
                throw std::domain_error("hls_check: norm divergent at infinity");
            auto res = integrate_to_infinity(integrand, g.grid().r_max, tol, decay);
            total += res.value;
        }
        return std::pow(area * total, 1.0 / expo);
    };

    const RadialFn pot = riesz_potential_radial(f, alpha, d, tol);
    return norm(pot, q) / norm(f, s);
}

bool lower_bound_check(const RadialFn& v, const ProblemParams& params) {
    params.validate();
    const double anchor = 2.0;
    if (v.grid().r_max <= anchor) throw std::domain_error("lower_bound_check: grid too short");
    const double C = v(anchor) / std::pow(anchor, 1.0 - params.k);
    if (!(C > 0.0)) return false; // zero trace is not a positive solution
    for (double r : v.grid().nodes) {
        if (r <= anchor) continue;
        if (v(r) < 0.5 * C * std::pow(r, 1.0 - params.k)) return false;
    }
    return true;
}

} // namespace halfriesz
