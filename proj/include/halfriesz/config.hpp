#ifndef HALFRIESZ_CONFIG_HPP
#define HALFRIESZ_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "halfriesz/params.hpp"
#include "halfriesz/picard.hpp"

namespace halfriesz {

// Raised by config parsing/validation with every violation collected, so a
// bad file is reported in one pass.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> v);
    std::vector<std::string> violations;
};

/*
 * Experiment configuration, deserialised from a JSON document:
 *
 * {
 *   "params":  {"N": 3, "k": 2.0, "p": 4.0, "lambda": 1e-3},
 *   "measure": {"h": 1.0, "rho": 0.25, "m": 1.0},
 *   "solver":  {"R": "inf" | 64.0, "envelope_factor": 2.5, "tol": 1e-8,
 *               "max_iter": 200, "blowup_threshold": 1e12},
 *   "grid":    {"r_min": 1e-3, "r_max": 1e3, "nodes": 145},
 *   "seed": 1234,
 *   "quad_tol": 1e-8,
 *   "bootstrap":   {"n_max": 64},
 *   "lambda_star": {"bracket_lo": 1e-4, "bracket_hi": 1e3},
 *   "verify":      {"target": "composition" | "exact" | "bubble" |
 *                             "estimates" | "holder" | "hls"}
 * }
 *
 * Every section except "params" has the defaults shown above.
 */
struct ExperimentConfig {
    ProblemParams params;
    SphereMeasure measure;
    SolverConfig solver;
    double grid_r_min = 1e-3;
    double grid_r_max = 1e3;
    int grid_nodes = 145;
    std::uint64_t seed = 1234;
    double quad_tol = kDefaultQuadTol;
    int bootstrap_n_max = 64;
    double ls_bracket_lo = 1e-4;
    double ls_bracket_hi = 1e3;
    std::string verify_target;

    // Parses and validates; throws ConfigError listing every violation.
    static ExperimentConfig load(const std::string& path);
    static ExperimentConfig parse(const std::string& json_text);

    // refine >= 0 doublings of the node count
    RadialGrid make_grid(int refine = 0) const;
};

// Atomic text file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace halfriesz

#endif
