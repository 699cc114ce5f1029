#ifndef HALFRIESZ_RADIAL_FN_HPP
#define HALFRIESZ_RADIAL_FN_HPP

#include <vector>

#include "halfriesz/quadrature.hpp"

namespace halfriesz {

// f(r) ~ coeff * r^{-exponent} outside the grid.  An origin law with
// exponent 0 is a finite limit value.
struct PowerLaw {
    double coeff = 0.0;
    double exponent = 0.0;
};

/*
 * A nonnegative radial function on the boundary hyperplane: samples on a
 * geometric grid, log-log linear in between (exact on pure powers), power
 * laws outside.  Immutable after construction; operators return new values.
 */
class RadialFn {
public:
    RadialFn() = default;
    RadialFn(RadialGrid grid, std::vector<double> values, PowerLaw tail, PowerLaw origin);

    // Samples a callable on the grid and fits the laws to the edge values:
    //   tail exponent from the last two nodes, origin from the first two.
    static RadialFn from_function(const RadialGrid& grid,
                                  const std::function<double(double)>& f);

    // Pure power c r^{-tau} represented exactly (laws and samples agree).
    static RadialFn pure_power(const RadialGrid& grid, double coeff, double tau);

    static RadialFn zero(const RadialGrid& grid);

    double operator()(double r) const;

    const RadialGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const PowerLaw& tail() const { return tail_; }
    const PowerLaw& origin() const { return origin_; }
    bool is_zero() const;

    // pointwise power v^p, with 0^p = 0; laws transform exactly
    RadialFn pow(double p) const;
    RadialFn scaled(double factor) const;

    // max_i |a_i - b_i| / max(b_i, floor) on the common grid
    static double sup_relative_difference(const RadialFn& a, const RadialFn& b,
                                          double floor = 1e-300);

    // Tail law agrees with the trend of the last two grid values (relative
    // band; default 20%).  Throws std::runtime_error when violated.
    void check_tail_consistency(double band = 0.20) const;

private:
    RadialGrid grid_;
    std::vector<double> values_;
    PowerLaw tail_;
    PowerLaw origin_;
};

} // namespace halfriesz

#endif
