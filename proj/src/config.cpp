#include "halfriesz/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace halfriesz {

namespace {
std::string join(const std::vector<std::string>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "; " : "") << v[i];
    return os.str();
}
} // namespace

ConfigError::ConfigError(std::vector<std::string> v)
    : std::runtime_error("config invalid: " + join(v)), violations(std::move(v)) {}

namespace {

using nlohmann::json;

class Collector {
public:
    explicit Collector(const json& root) : root_(root) {}

    template <typename T>
    T get(const std::string& section, const std::string& key, T fallback, bool required = false) {
        if (!root_.contains(section)) {
            if (required) bad_.push_back("missing section \"" + section + "\"");
            return fallback;
        }
        const auto& sec = root_.at(section);
        if (!sec.contains(key)) {
            if (required) bad_.push_back("missing field \"" + section + "." + key + "\"");
            return fallback;
        }
        try {
            return sec.at(key).get<T>();
        } catch (const json::exception& e) {
            bad_.push_back("field \"" + section + "." + key + "\": " + e.what());
            return fallback;
        }
    }

    double get_radius(const std::string& section, const std::string& key, double fallback) {
        if (!root_.contains(section) || !root_.at(section).contains(key)) return fallback;
        const auto& v = root_.at(section).at(key);
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
            bad_.push_back("field \"" + section + "." + key + "\": expected number or \"inf\"");
            return fallback;
        }
        try {
            return v.get<double>();
        } catch (const json::exception& e) {
            bad_.push_back("field \"" + section + "." + key + "\": " + e.what());
            return fallback;
        }
    }

    void note(const std::string& msg) { bad_.push_back(msg); }
    void check(bool ok, const std::string& msg) {
        if (!ok) bad_.push_back(msg);
    }
    const std::vector<std::string>& violations() const { return bad_; }

private:
    const json& root_;
    std::vector<std::string> bad_;
};

} // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError({std::string("JSON parse failure: ") + e.what()});
    }

    Collector c(root);
    ExperimentConfig cfg;
    cfg.params.N = c.get<int>("params", "N", 0, true);
    cfg.params.k = c.get<double>("params", "k", 0.0, true);
    cfg.params.p = c.get<double>("params", "p", 0.0, true);
    cfg.params.lambda = c.get<double>("params", "lambda", 0.0, true);

    cfg.measure.h = c.get<double>("measure", "h", cfg.measure.h);
    cfg.measure.rho = c.get<double>("measure", "rho", cfg.measure.rho);
    cfg.measure.m = c.get<double>("measure", "m", cfg.measure.m);

    cfg.solver.R = c.get_radius("solver", "R", cfg.solver.R);
    cfg.solver.envelope_factor =
        c.get<double>("solver", "envelope_factor", cfg.solver.envelope_factor);
    cfg.solver.tol = c.get<double>("solver", "tol", cfg.solver.tol);
    cfg.solver.max_iter = c.get<int>("solver", "max_iter", cfg.solver.max_iter);
    cfg.solver.blowup_threshold =
        c.get<double>("solver", "blowup_threshold", cfg.solver.blowup_threshold);

    cfg.grid_r_min = c.get<double>("grid", "r_min", cfg.grid_r_min);
    cfg.grid_r_max = c.get<double>("grid", "r_max", cfg.grid_r_max);
    cfg.grid_nodes = c.get<int>("grid", "nodes", cfg.grid_nodes);

    if (root.contains("seed")) {
        try {
            cfg.seed = root.at("seed").get<std::uint64_t>();
        } catch (const json::exception& e) {
            c.note(std::string("field \"seed\": ") + e.what());
        }
    }
    if (root.contains("quad_tol")) {
        try {
            cfg.quad_tol = root.at("quad_tol").get<double>();
        } catch (const json::exception& e) {
            c.note(std::string("field \"quad_tol\": ") + e.what());
        }
    }
    cfg.bootstrap_n_max = c.get<int>("bootstrap", "n_max", cfg.bootstrap_n_max);
    cfg.ls_bracket_lo = c.get<double>("lambda_star", "bracket_lo", cfg.ls_bracket_lo);
    cfg.ls_bracket_hi = c.get<double>("lambda_star", "bracket_hi", cfg.ls_bracket_hi);
    cfg.verify_target = c.get<std::string>("verify", "target", cfg.verify_target);

    // cross-module validation, every violation reported at once
    Collector v(root);
    auto collect = [&](auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            v.note(e.what());
        }
    };
    collect([&] { cfg.params.validate(); });
    collect([&] { cfg.measure.validate(); });
    collect([&] { cfg.solver.validate(); });
    collect([&] { (void)RadialGrid::geometric(cfg.grid_r_min, cfg.grid_r_max, cfg.grid_nodes); });
    v.check(cfg.quad_tol > 0.0, "quad_tol must be > 0");
    v.check(cfg.bootstrap_n_max >= 1, "bootstrap.n_max must be >= 1");
    v.check(cfg.ls_bracket_lo > 0.0 && cfg.ls_bracket_lo < cfg.ls_bracket_hi,
            "lambda_star bracket must satisfy 0 < lo < hi");

    std::vector<std::string> all = c.violations();
    all.insert(all.end(), v.violations().begin(), v.violations().end());
    if (!all.empty()) throw ConfigError(std::move(all));
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

RadialGrid ExperimentConfig::make_grid(int refine) const {
    int n = grid_nodes;
    for (int i = 0; i < refine; ++i) n = 2 * (n - 1) + 1;
    auto g = RadialGrid::geometric(grid_r_min, grid_r_max, n);
    g.refinement_level = refine;
    return g;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

} // namespace halfriesz
