#include "halfriesz/radial_fn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace halfriesz {

RadialFn::RadialFn(RadialGrid grid, std::vector<double> values, PowerLaw tail, PowerLaw origin)
    : grid_(std::move(grid)), values_(std::move(values)), tail_(tail), origin_(origin) {
    grid_.validate();
    if (values_.size() != grid_.size())
        throw std::invalid_argument("RadialFn: values/grid size mismatch");
    for (double v : values_)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("RadialFn: values must be finite and nonnegative");
    if (tail_.coeff < 0.0 || origin_.coeff < 0.0)
        throw std::invalid_argument("RadialFn: law coefficients must be nonnegative");
    if (origin_.exponent < 0.0)
        throw std::invalid_argument("RadialFn: origin exponent must be >= 0");
}

RadialFn RadialFn::from_function(const RadialGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid.nodes[i]);
    const size_t n = vals.size();
    auto fit = [&](size_t i, size_t j) -> PowerLaw {
        if (vals[i] <= 0.0 || vals[j] <= 0.0) return {0.0, 0.0};
        const double slope = std::log(vals[j] / vals[i]) / std::log(grid.nodes[j] / grid.nodes[i]);
        const double tau = -slope;
        return {vals[j] * std::pow(grid.nodes[j], tau), tau};
    };
    PowerLaw tail = fit(n - 2, n - 1);
    PowerLaw origin = fit(1, 0);
    if (origin.exponent <= 1e-12) origin = {vals[0], 0.0}; // flat near 0: finite limit
    return RadialFn(grid, std::move(vals), tail, origin);
}

RadialFn RadialFn::pure_power(const RadialGrid& grid, double coeff, double tau) {
    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) vals[i] = coeff * std::pow(grid.nodes[i], -tau);
    PowerLaw law{coeff, tau};
    PowerLaw origin = tau >= 0.0 ? law : PowerLaw{0.0, 0.0};
    return RadialFn(grid, std::move(vals), law, origin);
}

RadialFn RadialFn::zero(const RadialGrid& grid) {
    return RadialFn(grid, std::vector<double>(grid.size(), 0.0), {0.0, 0.0}, {0.0, 0.0});
}

double RadialFn::operator()(double r) const {
    if (!(r >= 0.0)) throw std::domain_error("RadialFn: negative radius");
    if (r < grid_.r_min) {
        if (origin_.exponent == 0.0) return origin_.coeff;
        if (r == 0.0) throw std::domain_error("RadialFn: origin law singular at r = 0");
        return origin_.coeff * std::pow(r, -origin_.exponent);
    }
    if (r > grid_.r_max) {
        if (tail_.coeff == 0.0) return 0.0;
        return tail_.coeff * std::pow(r, -tail_.exponent);
    }
    const auto& x = grid_.nodes;
    auto it = std::upper_bound(x.begin(), x.end(), r);
    size_t j = std::min<size_t>(std::max<long>(1, it - x.begin()), x.size() - 1);
    const size_t i = j - 1;
    const double v0 = values_[i], v1 = values_[j];
    if (v0 > 0.0 && v1 > 0.0) {
        const double t = std::log(r / x[i]) / std::log(x[j] / x[i]);
        return std::exp((1.0 - t) * std::log(v0) + t * std::log(v1));
    }
    // zero endpoint: fall back to linear interpolation on this panel
    const double t = (r - x[i]) / (x[j] - x[i]);
    return (1.0 - t) * v0 + t * v1;
}

bool RadialFn::is_zero() const {
    if (tail_.coeff != 0.0 || origin_.coeff != 0.0) return false;
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

RadialFn RadialFn::pow(double p) const {
    std::vector<double> vals(values_.size());
    for (size_t i = 0; i < vals.size(); ++i)
        vals[i] = values_[i] == 0.0 ? 0.0 : std::exp(p * std::log(values_[i]));
    auto law_pow = [&](const PowerLaw& l) -> PowerLaw {
        if (l.coeff == 0.0) return {0.0, 0.0};
        return {std::exp(p * std::log(l.coeff)), p * l.exponent};
    };
    return RadialFn(grid_, std::move(vals), law_pow(tail_), law_pow(origin_));
}

RadialFn RadialFn::scaled(double factor) const {
    if (!(factor >= 0.0)) throw std::invalid_argument("RadialFn::scaled: factor must be >= 0");
    std::vector<double> vals(values_.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = values_[i] * factor;
    return RadialFn(grid_, std::move(vals), {tail_.coeff * factor, tail_.exponent},
                    {origin_.coeff * factor, origin_.exponent});
}

double RadialFn::sup_relative_difference(const RadialFn& a, const RadialFn& b, double floor) {
    if (a.grid_.size() != b.grid_.size())
        throw std::invalid_argument("sup_relative_difference: grids differ");
    double sup = 0.0;
    for (size_t i = 0; i < a.values_.size(); ++i) {
        const double denom = std::max(b.values_[i], floor);
        sup = std::max(sup, std::abs(a.values_[i] - b.values_[i]) / denom);
    }
    return sup;
}

void RadialFn::check_tail_consistency(double band) const {
    const size_t n = values_.size();
    if (n < 2 || tail_.coeff == 0.0) return;
    for (size_t i : {n - 2, n - 1}) {
        const double predicted = tail_.coeff * std::pow(grid_.nodes[i], -tail_.exponent);
        const double actual = values_[i];
        if (actual == 0.0) continue;
        if (std::abs(predicted - actual) > band * actual) {
            std::ostringstream os;
            os << "RadialFn: tail law " << tail_.coeff << " r^-" << tail_.exponent
               << " disagrees with grid value " << actual << " at r=" << grid_.nodes[i]
               << " (predicted " << predicted << ", band " << band * 100 << "%)";
            throw std::runtime_error(os.str());
        }
    }
}

} // namespace halfriesz
