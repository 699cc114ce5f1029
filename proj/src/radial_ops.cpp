#include "halfriesz/radial_ops.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "halfriesz/angular.hpp"
#include "halfriesz/special.hpp"

namespace halfriesz {

namespace {

void check_s0(const RadialFn& v, double alpha, int d, const char* who) {
    // Weighted integrability of the data against the kernel: the tail must
    // beat the kernel decay and the origin must stay d-integrable.
    const double tau_out = v.tail().coeff == 0.0 ? std::numeric_limits<double>::infinity()
                                                 : v.tail().exponent;
    if (!(tau_out > alpha)) {
        std::ostringstream os;
        os << who << ": potential infinite, tail exponent " << tau_out
           << " must exceed alpha = " << alpha;
        throw std::domain_error(os.str());
    }
    const double tau_in = v.origin().exponent;
    if (!(tau_in < d)) {
        std::ostringstream os;
        os << who << ": potential infinite, origin exponent " << tau_in
           << " must stay below d = " << d;
        throw std::domain_error(os.str());
    }
}

// int_lo^hi f(s) s^{d-1} A_beta(r, s; h) ds with a diagonal hint at s = r.
double weighted_chunk(const RadialFn& f, int d, double beta, double r, double h, double lo,
                      double hi, double tol) {
    if (!(hi > lo)) return 0.0;
    auto g = [&](double s) {
        const double fv = f(s);
        if (fv == 0.0) return 0.0;
        return fv * std::pow(s, d - 1) * angular_kernel(d, beta, r, s, h);
    };
    std::vector<SingularityHint> hints;
    if (h == 0.0 && r >= lo && r <= hi) {
        const double e = angular_diagonal_exponent(d, beta);
        if (e >= 1.0) {
            std::ostringstream os;
            os << "radial op: non-integrable diagonal |s-r|^-" << e << " (beta=" << beta
               << ", d=" << d << ")";
            throw quadrature_error(os.str());
        }
        hints.push_back({r, std::max(e, 0.25)});
    } else if (r >= lo && r <= hi) {
        hints.push_back({r, 0.25}); // lifted kernels peak near the diagonal
    }
    const double tau_in = f.origin().exponent;
    if (lo == 0.0 && tau_in > static_cast<double>(d - 1)) {
        // integrand ~ s^{d-1-tau_in} near 0
        hints.push_back({0.0, tau_in - (d - 1)});
    }
    return integrate_or_throw(g, lo, hi, tol, hints);
}

double tail_chunk(const RadialFn& f, int d, double beta, double r, double h, double from,
                  double tol) {
    if (f.tail().coeff == 0.0) return 0.0;
    auto g = [&](double s) { return f(s) * std::pow(s, d - 1) * angular_kernel(d, beta, r, s, h); };
    // integrand decays like s^{d-1-tau-beta}
    const double decay = f.tail().exponent + beta - (d - 1);
    auto res = integrate_to_infinity(g, from, tol, decay, from);
    if (!res.converged)
        throw quadrature_error("radial op: tail quadrature did not converge");
    return res.value;
}

double apply_at_impl(const RadialFn& f, double alpha, int d, double r, double h, double tol) {
    const double beta = d - alpha;
    const double rmin = f.grid().r_min, rmax = f.grid().r_max;
    double total = 0.0;
    total += weighted_chunk(f, d, beta, r, h, 0.0, rmin, tol);
    total += weighted_chunk(f, d, beta, r, h, rmin, rmax, tol);
    total += tail_chunk(f, d, beta, r, h, rmax, tol);
    return total;
}

RadialFn assemble_output(const RadialGrid& grid, std::vector<double> vals, double tau_tail,
                         double tau_origin) {
    const size_t n = vals.size();
    PowerLaw tail{0.0, 0.0};
    if (vals[n - 1] > 0.0) tail = {vals[n - 1] * std::pow(grid.nodes[n - 1], tau_tail), tau_tail};
    PowerLaw origin{vals[0], 0.0};
    if (tau_origin > 0.0 && vals[0] > 0.0)
        origin = {vals[0] * std::pow(grid.nodes[0], tau_origin), tau_origin};
    RadialFn out(grid, std::move(vals), tail, origin);
    out.check_tail_consistency();
    return out;
}

} // namespace

double riesz_apply_at(const RadialFn& v, double alpha, int d, double r, double tol) {
    if (!(alpha > 0.0) || !(alpha < d))
        throw std::domain_error("riesz potential: order must satisfy 0 < alpha < d");
    if (v.is_zero()) return 0.0;
    check_s0(v, alpha, d, "riesz potential");
    return apply_at_impl(v, alpha, d, r, 0.0, tol);
}

RadialFn riesz_potential_radial(const RadialFn& v, double alpha, int d, double tol) {
    if (!(alpha > 0.0) || !(alpha < d))
        throw std::domain_error("riesz potential: order must satisfy 0 < alpha < d");
    const RadialGrid& grid = v.grid();
    if (v.is_zero()) return RadialFn::zero(grid);
    check_s0(v, alpha, d, "riesz potential");
    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        vals[i] = apply_at_impl(v, alpha, d, grid.nodes[i], 0.0, tol);
    const double tau_out = v.tail().coeff == 0.0 ? std::numeric_limits<double>::infinity()
                                                 : v.tail().exponent;
    const double tau_tail = std::min(tau_out - alpha, d - alpha);
    const double tau_origin = std::max(0.0, v.origin().exponent - alpha);
    return assemble_output(grid, std::move(vals), tau_tail, tau_origin);
}

RadialFn boundary_operator_H(const RadialFn& v, const ProblemParams& params, double tol) {
    params.validate();
    const int d = params.boundary_dim();
    if (params.k_borderline())
        throw std::domain_error(
            "boundary_operator_H: kernel |.|^-k is not locally integrable on R^{N-1} at "
            "k = N-1; only the composed operator exists there");
    const double alpha = d - params.k;
    return riesz_potential_radial(v.pow(params.p), alpha, d, tol);
}

double lifting_J(const RadialFn& f, double alpha, int N, double r_prime, double x_N, double tol) {
    const int d = N - 1;
    if (!(alpha > 0.0) || !(alpha < d))
        throw std::domain_error("lifting_J: order must satisfy 0 < alpha < N-1");
    if (x_N < 0.0) throw std::domain_error("lifting_J: x_N >= 0 required");
    if (f.is_zero()) return 0.0;
    check_s0(f, alpha, d, "lifting_J");
    return apply_at_impl(f, alpha, d, r_prime, x_N, tol);
}

double composed_coupling(const ProblemParams& params) {
    params.validate();
    if (params.k <= 1.0)
        throw std::domain_error(
            "composed_coupling: composed kernel divergent for k <= 1 (the boundary "
            "convolution has no finite trace in this regime)");
    const double prefactor = 2.0 * params.lambda / ((params.N - 2) * sphere_area(params.N));
    if (params.k_borderline()) return prefactor; // divergent C(N,1,k): unit stand-in
    return prefactor * riesz_composition_constant(params.N, 1.0, params.k).value;
}

namespace {
void check_composed_pre(const RadialFn& v, const ProblemParams& params) {
    if (params.k <= 1.0)
        throw std::domain_error("composed trace operator: composed kernel divergent for k <= 1");
    const double tau_out = v.tail().coeff == 0.0 ? std::numeric_limits<double>::infinity()
                                                 : v.tail().exponent;
    if (!(params.p * tau_out + (params.k - 1.0) > params.N - 1.0)) {
        std::ostringstream os;
        os << "composed trace operator: tail condition p*tau + (k-1) > N-1 fails "
           << "(p=" << params.p << ", tau=" << tau_out << ", k=" << params.k << ")";
        throw std::domain_error(os.str());
    }
}
} // namespace

double composed_trace_at(const RadialFn& v, const ProblemParams& params, double r, double tol) {
    params.validate();
    if (v.is_zero()) return 0.0;
    check_composed_pre(v, params);
    const int d = params.boundary_dim();
    const double alpha = params.N - params.k; // kernel |.|^{-(k-1)}
    return composed_coupling(params) * apply_at_impl(v.pow(params.p), alpha, d, r, 0.0, tol);
}

RadialFn composed_trace_operator(const RadialFn& v, const ProblemParams& params, double tol) {
    params.validate();
    const RadialGrid& grid = v.grid();
    if (v.is_zero()) return RadialFn::zero(grid);
    check_composed_pre(v, params);
    const int d = params.boundary_dim();
    const double alpha = params.N - params.k;
    const RadialFn density = v.pow(params.p);
    const double c = composed_coupling(params);
    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        vals[i] = c * apply_at_impl(density, alpha, d, grid.nodes[i], 0.0, tol);
    const double tau_vp = density.tail().coeff == 0.0 ? std::numeric_limits<double>::infinity()
                                                      : density.tail().exponent;
    const double tau_tail = std::min(tau_vp - alpha, d - alpha);
    const double tau_origin = std::max(0.0, density.origin().exponent - alpha);
    return assemble_output(grid, std::move(vals), tau_tail, tau_origin);
}

double truncated_kernel_KR(double r_x, double r_z, double R, const ProblemParams& params,
                           double tol) {
    params.validate();
    if (params.N != 3)
        throw std::domain_error("truncated_kernel_KR: implemented for N = 3 only "
                                "(use the composed operator for general N)");
    if (params.k_borderline())
        throw std::domain_error("truncated_kernel_KR: inner singularity |y'-z'|^-k not "
                                "integrable at k = N-1");
    if (r_x < 0.0 || r_z < 0.0 || R < 1.0)
        throw std::domain_error("truncated_kernel_KR: need r_x, r_z >= 0 and R >= 1");
    const double k = params.k;

    // Polar coordinates about the origin; x' and z' sit on the theta = 0 ray.
    auto theta_integral = [&](double t) {
        const double ax = r_x * r_x + t * t, bx = 2.0 * r_x * t;
        const double az = r_z * r_z + t * t, bz = 2.0 * r_z * t;
        auto g = [&](double th) {
            const double c = std::cos(th);
            return std::pow(ax - bx * c, -0.5) * std::pow(az - bz * c, -k / 2.0);
        };
        std::vector<SingularityHint> hints{{0.0, 0.5}};
        return 2.0 * integrate_or_throw(g, 0.0, std::numbers::pi, tol * 1e-2, hints);
    };
    auto f = [&](double t) { return t * theta_integral(t); };
    std::vector<SingularityHint> hints;
    if (r_x > 0.0 && r_x < R) hints.push_back({r_x, 0.25});               // log from |x'-y'|^{-1}
    if (r_z > 0.0 && r_z < R) hints.push_back({r_z, std::max(k - 1.0, 0.25)});
    return integrate_or_throw(f, 0.0, R, tol, hints);
}

ComposedKernelMatrix::ComposedKernelMatrix(const RadialGrid& grid, const ProblemParams& params,
                                           double truncation_radius, double tol)
    : grid_(grid), d_(params.boundary_dim()), beta_(params.k - 1.0), R_(truncation_radius),
      tol_(tol) {
    params.validate();
    if (params.k <= 1.0)
        throw std::domain_error("ComposedKernelMatrix: composed kernel divergent for k <= 1");
    if (!(R_ > grid_.r_min))
        throw std::invalid_argument("ComposedKernelMatrix: truncation radius below the grid");
    if (std::isfinite(R_) && R_ > grid_.r_max)
        throw std::invalid_argument(
            "ComposedKernelMatrix: finite truncation beyond r_max is not representable; "
            "use R <= r_max or R = infinity");

    const auto& s = grid_.nodes;
    const size_t n = s.size();
    const double upper = std::min(R_, grid_.r_max);
    weights_.assign(n, std::vector<double>(n, 0.0));
    origin_weights_.assign(n, 0.0);

    const double diag_e = std::max(angular_diagonal_exponent(d_, beta_), 0.25);
    for (size_t i = 0; i < n; ++i) {
        const double r = s[i];
        // hat-function moments per panel, target r
        for (size_t j = 0; j + 1 < n; ++j) {
            const double lo = s[j], hi = std::min(s[j + 1], upper);
            if (!(hi > lo)) break;
            const double width = s[j + 1] - s[j];
            std::vector<SingularityHint> hints;
            if (r > lo && r < hi) hints.push_back({r, diag_e});
            auto kern = [&](double t) {
                return std::pow(t, d_ - 1) * angular_kernel(d_, beta_, r, t, 0.0);
            };
            const double wl = integrate_or_throw(
                [&](double t) { return kern(t) * (s[j + 1] - t) / width; }, lo, hi, tol_, hints);
            const double wr = integrate_or_throw(
                [&](double t) { return kern(t) * (t - s[j]) / width; }, lo, hi, tol_, hints);
            weights_[i][j] += wl;
            weights_[i][j + 1] += wr;
        }
        // constant density on [0, r_min]
        origin_weights_[i] = integrate_or_throw(
            [&](double t) { return std::pow(t, d_ - 1) * angular_kernel(d_, beta_, r, t, 0.0); },
            0.0, grid_.r_min, tol_);
    }
}

const std::vector<double>& ComposedKernelMatrix::tail_weights(double tau) const {
    for (const auto& [t, w] : tail_cache_)
        if (std::abs(t - tau) < 1e-12) return w;
    std::vector<double> w(grid_.size());
    for (size_t i = 0; i < grid_.size(); ++i) {
        const double r = grid_.nodes[i];
        auto g = [&](double t) {
            return std::pow(t, d_ - 1 - tau) * angular_kernel(d_, beta_, r, t, 0.0);
        };
        const double decay = tau + beta_ - (d_ - 1);
        if (!(decay > 1.0))
            throw quadrature_error("ComposedKernelMatrix: tail exponent too weak, integral "
                                   "divergent (decay " + std::to_string(decay) + ")");
        auto res = integrate_to_infinity(g, grid_.r_max, tol_, decay, grid_.r_max);
        if (!res.converged)
            throw quadrature_error("ComposedKernelMatrix: tail weights did not converge");
        w[i] = res.value;
    }
    tail_cache_.emplace_back(tau, std::move(w));
    return tail_cache_.back().second;
}

std::vector<double> ComposedKernelMatrix::apply(const RadialFn& density) const {
    if (density.grid().size() != grid_.size())
        throw std::invalid_argument("ComposedKernelMatrix::apply: grid mismatch");
    const auto& f = density.values();
    const size_t n = grid_.size();
    std::vector<double> out(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (size_t j = 0; j < n; ++j) acc += weights_[i][j] * f[j];
        out[i] = acc;
    }
    // origin stub
    const auto& origin = density.origin();
    if (origin.coeff > 0.0) {
        if (origin.exponent <= 1e-12) {
            for (size_t i = 0; i < n; ++i) out[i] += origin_weights_[i] * origin.coeff;
        } else {
            for (size_t i = 0; i < n; ++i) {
                const double r = grid_.nodes[i];
                auto g = [&](double t) {
                    return origin.coeff * std::pow(t, d_ - 1 - origin.exponent) *
                           angular_kernel(d_, beta_, r, t, 0.0);
                };
                std::vector<SingularityHint> hints;
                if (origin.exponent > d_ - 1)
                    hints.push_back({0.0, origin.exponent - (d_ - 1)});
                out[i] += integrate_or_throw(g, 0.0, grid_.r_min, tol_, hints);
            }
        }
    }
    // declared-power tail beyond the grid, only in untruncated mode
    if (std::isinf(R_) && density.tail().coeff > 0.0) {
        const auto& tw = tail_weights(density.tail().exponent);
        const double c = density.tail().coeff;
        for (size_t i = 0; i < n; ++i) out[i] += c * tw[i];
    }
    return out;
}

} // namespace halfriesz
