#include "halfriesz/params.hpp"

#include <cmath>
#include <sstream>

namespace halfriesz {

void ProblemParams::validate() const {
    std::ostringstream bad;
    if (N < 3) bad << "N >= 3 violated (N=" << N << "); ";
    if (!(k > 0.0)) bad << "k > 0 violated (k=" << k << "); ";
    if (k > (N - 1) * (1.0 + kCriticalRelTol))
        bad << "k <= N-1 violated (k=" << k << ", N-1=" << N - 1 << "); ";
    if (!(p > 0.0)) bad << "p > 0 violated (p=" << p << "); ";
    if (lambda < 0.0) bad << "lambda >= 0 violated (lambda=" << lambda << "); ";
    if (!std::isfinite(k) || !std::isfinite(p) || !std::isfinite(lambda))
        bad << "parameters must be finite; ";
    const std::string msg = bad.str();
    if (!msg.empty()) throw std::invalid_argument("ProblemParams: " + msg);
}

std::string to_string(RegimeTag t) {
    switch (t) {
        case RegimeTag::NonexistenceKSmall: return "NonexistenceKSmall";
        case RegimeTag::NonexistenceSubcritical: return "NonexistenceSubcritical";
        case RegimeTag::CriticalPStarNoLpSolution: return "CriticalPStarNoLpSolution";
        case RegimeTag::ExistenceSupercritical: return "ExistenceSupercritical";
    }
    return "?";
}

std::string to_string(RegularFlag f) {
    switch (f) {
        case RegularFlag::NoRegular: return "NoRegular";
        case RegularFlag::RegularCriticalBubbles: return "RegularCriticalBubbles";
        case RegularFlag::RegularExists: return "RegularExists";
    }
    return "?";
}

CriticalExponents critical_exponents(const ProblemParams& params) {
    params.validate();
    if (params.k <= 1.0)
        throw std::domain_error(
            "critical_exponents: undefined for k <= 1 (nonexistence holds for every p > 0)");
    const double p_star = (params.N - 1) / (params.k - 1.0);
    return {p_star, 2.0 * p_star - 1.0};
}

namespace {
int critical_compare(double p, double p_crit) {
    const double tol = kCriticalRelTol * std::abs(p_crit);
    if (std::abs(p - p_crit) <= tol) return 0;
    return p < p_crit ? -1 : 1;
}
} // namespace

Regime classify_regime(const ProblemParams& params) {
    params.validate();
    Regime r{};
    if (params.k <= 1.0) {
        r.tag = RegimeTag::NonexistenceKSmall;
        r.regular = RegularFlag::NoRegular; // vacuous: no solutions at all
        return r;
    }
    const auto ce = critical_exponents(params);
    switch (critical_compare(params.p, ce.p_star)) {
        case -1: r.tag = RegimeTag::NonexistenceSubcritical; break;
        case 0: r.tag = RegimeTag::CriticalPStarNoLpSolution; break;
        default: r.tag = RegimeTag::ExistenceSupercritical; break;
    }
    switch (critical_compare(params.p, ce.p_star_star)) {
        case -1: r.regular = RegularFlag::NoRegular; break;
        case 0: r.regular = RegularFlag::RegularCriticalBubbles; break;
        default: r.regular = RegularFlag::RegularExists; break;
    }
    return r;
}

} // namespace halfriesz
