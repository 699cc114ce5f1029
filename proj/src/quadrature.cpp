#include "halfriesz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace halfriesz {

namespace {

// Gauss-Kronrod (7,15) nodes/weights on [-1,1].  Nodes are interior, so
// integrable endpoint singularities are never evaluated directly.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    double value, err;
};

struct GK15 {
    double value;
    double err;
};

GK15 gk15(const std::function<double(double)>& f, double a, double b, long long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    evals += 15;
    for (double v : fv)
        if (!std::isfinite(v))
            throw quadrature_error(std::isnan(v)
                                       ? "adaptive_integrate: integrand returned NaN"
                                       : "adaptive_integrate: integrand returned infinity");
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    const double value = resk * h;
    const double err = std::abs((resk - resg) * h);
    return {value, err};
}

// Geometric panels from `far` toward the singular endpoint `sing`; the last
// panel stops short by |far-sing|*cutoff, which carries O(cutoff^{1-e}) of
// the integral for an |t-sing|^{-e} law.  A singularity at t = 0 can be
// approached much deeper than one at t0 != 0, where evaluation points
// t0 + delta stop being representable around |delta| ~ eps |t0|.
double grade_cutoff(double sing) { return sing == 0.0 ? 1e-26 : 1e-13; }

void graded_edges(double sing, double far, std::vector<double>& edges) {
    const double len = std::abs(far - sing);
    if (len <= 0.0) return;
    const double sgn = far > sing ? 1.0 : -1.0;
    const double cutoff = grade_cutoff(sing);
    const int n_panels = sing == 0.0 ? 64 : 36;
    const double ratio = std::pow(cutoff, 1.0 / n_panels);
    double frac = 1.0;
    edges.push_back(far);
    for (int i = 1; i <= n_panels; ++i) {
        frac *= ratio;
        edges.push_back(sing + sgn * len * frac);
    }
}

} // namespace

QuadResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                              double tol, std::span<const SingularityHint> hints,
                              std::span<const double> breaks) {
    if (!(a < b)) {
        if (a == b) return {0.0, 0.0, true, 0};
        throw std::invalid_argument("adaptive_integrate: requires a < b");
    }
    for (const auto& h : hints) {
        if (h.exponent >= 1.0 && h.location >= a && h.location <= b) {
            std::ostringstream os;
            os << "adaptive_integrate: non-integrable singularity |t-" << h.location
               << "|^-" << h.exponent << " inside [" << a << ", " << b << "]";
            throw quadrature_error(os.str());
        }
    }

    // Break points: interval ends, hint locations, declared kinks, graded
    // ladders toward the hints.
    std::vector<double> edges{a, b};
    for (const auto& h : hints) {
        if (h.location > a && h.location < b) edges.push_back(h.location);
    }
    for (double t : breaks) {
        if (t > a && t < b) edges.push_back(t);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    QuadResult out;
    double stub_total = 0.0, stub_err = 0.0;

    // A hinted point t0 is never evaluated: panels stop a relative cutoff
    // short of it and the leftover stub is integrated in the local model
    // f ~ C |t-t0|^{-e}, with C and e fitted from two samples at the stub
    // edge (the fit absorbs log factors and drifting prefactors, leaving an
    // O(delta) model error on an O(cutoff^{1-e}) mass).
    auto stub_integral = [&](double sing, double edge, double hint_exponent) {
        const double delta = std::abs(edge - sing);
        if (delta == 0.0) return;
        const double f1 = f(edge);
        const double f2 = f(sing + 2.0 * (edge - sing));
        out.evaluations += 2;
        if (std::isnan(f1) || std::isnan(f2))
            throw quadrature_error("adaptive_integrate: integrand returned NaN");
        if (f1 == 0.0) return;
        double e = hint_exponent;
        double slack = 0.05;
        if (f2 != 0.0 && (f1 > 0.0) == (f2 > 0.0)) {
            const double fitted = std::log(std::abs(f1 / f2)) / std::log(2.0);
            if (fitted < 0.999) {
                e = std::max(fitted, -4.0);
                slack = 1e-5;
            }
        }
        const double mass = f1 * delta / (1.0 - e);
        stub_total += mass;
        stub_err += std::abs(mass) * slack;
    };

    // Panels are built per segment so that the carved-out stubs around the
    // hinted points never get bridged.
    std::vector<std::pair<double, double>> panels;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        double lo_exp = -1.0, hi_exp = -1.0;
        for (const auto& h : hints) {
            if (h.location == lo) lo_exp = std::max(lo_exp, h.exponent);
            if (h.location == hi) hi_exp = std::max(hi_exp, h.exponent);
        }
        const double mid = 0.5 * (lo + hi);
        std::vector<double> seg_edges;
        if (lo_exp >= 0.0) {
            const double far = hi_exp >= 0.0 ? mid : hi;
            graded_edges(lo, far, seg_edges);
            const double stub_edge = lo + (far - lo) * grade_cutoff(lo);
            stub_integral(lo, stub_edge, std::max(lo_exp, 0.0));
            lo = stub_edge;
        }
        if (hi_exp >= 0.0) {
            const double far = lo_exp >= 0.0 ? mid : edges[i];
            graded_edges(hi, far, seg_edges);
            const double stub_edge = hi + (far - hi) * grade_cutoff(hi);
            stub_integral(hi, stub_edge, std::max(hi_exp, 0.0));
            hi = stub_edge;
        }
        seg_edges.push_back(lo);
        seg_edges.push_back(hi);
        std::erase_if(seg_edges, [&](double e) { return e < lo || e > hi; });
        std::sort(seg_edges.begin(), seg_edges.end());
        seg_edges.erase(std::unique(seg_edges.begin(), seg_edges.end()), seg_edges.end());
        for (size_t j = 0; j + 1 < seg_edges.size(); ++j)
            panels.push_back({seg_edges[j], seg_edges[j + 1]});
    }

    auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp);
    double total = stub_total, toterr = stub_err;
    for (const auto& [plo, phi] : panels) {
        auto r = gk15(f, plo, phi, out.evaluations);
        total += r.value;
        toterr += r.err;
        queue.push({plo, phi, r.value, r.err});
    }

    const int cap = 4000;
    int splits = 0;
    while (toterr > tol && toterr > 1e-15 * std::abs(total) && splits < cap && !queue.empty()) {
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) continue; // panel at rounding floor
        auto left = gk15(f, worst.a, mid, out.evaluations);
        auto right = gk15(f, mid, worst.b, out.evaluations);
        total += left.value + right.value - worst.value;
        toterr += left.err + right.err - worst.err;
        queue.push({worst.a, mid, left.value, left.err});
        queue.push({mid, worst.b, right.value, right.err});
        ++splits;
    }

    out.value = total;
    out.err_est = toterr;
    out.converged = (toterr <= tol || toterr <= 1e-13 * std::abs(total));
    return out;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double tol, std::span<const SingularityHint> hints) {
    auto r = adaptive_integrate(f, a, b, tol, hints);
    if (!r.converged) {
        std::ostringstream os;
        os << "adaptive_integrate failed to converge on [" << a << ", " << b
           << "]: err_est=" << r.err_est << " tol=" << tol;
        throw quadrature_error(os.str());
    }
    return r.value;
}

QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a, double tol,
                                 double tail_exponent, double scale) {
    if (!(tail_exponent > 1.0))
        throw quadrature_error("integrate_to_infinity: tail exponent must exceed 1, got " +
                               std::to_string(tail_exponent));
    const double s = scale > 0.0 ? scale : std::max(std::abs(a), 1.0);
    // t = a + s(1+u)/(1-u) - s maps u in [0,1) onto [a, inf);
    // dt = 2s/(1-u)^2 du.  The mapped integrand decays like (1-u)^{tau-2}.
    auto g = [&](double u) {
        const double om = 1.0 - u;
        if (om <= 0.0) return 0.0; // limit value: decay > 1 kills the Jacobian
        const double t = a + s * (1.0 + u) / om - s;
        if (!std::isfinite(t)) return 0.0;
        const double jac = 2.0 * s / (om * om);
        return f(t) * jac;
    };
    // Endpoint behaviour at u=1 is (1-u)^{tau-2}: singular hint when tau < 2.
    std::vector<SingularityHint> hints;
    hints.push_back({1.0, std::max(0.2, 2.0 - tail_exponent)});
    return adaptive_integrate(g, 0.0, 1.0, tol, hints);
}

double power_tail_integral(double coeff, double tau, double T) {
    if (!(tau > 1.0))
        throw quadrature_error("power_tail_integral: divergent tail, exponent " +
                               std::to_string(tau) + " <= 1");
    if (!(T > 0.0)) throw std::invalid_argument("power_tail_integral: T > 0 required");
    return coeff * std::pow(T, 1.0 - tau) / (tau - 1.0);
}

RadialGrid RadialGrid::geometric(double r_min, double r_max, int n_nodes) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw std::invalid_argument("RadialGrid: need 0 < r_min < r_max");
    if (n_nodes < 2) throw std::invalid_argument("RadialGrid: need at least 2 nodes");
    RadialGrid g;
    g.r_min = r_min;
    g.r_max = r_max;
    g.nodes.resize(n_nodes);
    const double lmin = std::log(r_min), lmax = std::log(r_max);
    for (int i = 0; i < n_nodes; ++i)
        g.nodes[i] = std::exp(lmin + (lmax - lmin) * i / (n_nodes - 1));
    g.nodes.front() = r_min;
    g.nodes.back() = r_max;
    g.validate();
    return g;
}

RadialGrid RadialGrid::refined() const {
    RadialGrid g = geometric(r_min, r_max, static_cast<int>(2 * (nodes.size() - 1) + 1));
    g.refinement_level = refinement_level + 1;
    return g;
}

void RadialGrid::validate() const {
    if (nodes.size() < 2 || nodes.front() != r_min || nodes.back() != r_max)
        throw std::invalid_argument("RadialGrid: endpoints out of place");
    const double ratio0 = nodes[1] / nodes[0];
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!(nodes[i + 1] > nodes[i]))
            throw std::invalid_argument("RadialGrid: nodes not strictly increasing");
        const double ratio = nodes[i + 1] / nodes[i];
        if (std::abs(ratio / ratio0 - 1.0) > 1e-12)
            throw std::invalid_argument("RadialGrid: spacing is not geometric");
    }
}

} // namespace halfriesz
