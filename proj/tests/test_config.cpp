#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "halfriesz/config.hpp"

using namespace halfriesz;

namespace {
const char* kGood = R"({
  "params": {"N": 3, "k": 2.0, "p": 4.0, "lambda": 0.001},
  "measure": {"h": 1.0, "rho": 0.25, "m": 1.0},
  "solver": {"R": "inf", "tol": 1e-8, "max_iter": 200},
  "grid": {"r_min": 1e-3, "r_max": 1e3, "nodes": 97},
  "seed": 42
})";
}

TEST_CASE("well-formed config parses with defaults filled in") {
    const auto cfg = ExperimentConfig::parse(kGood);
    CHECK(cfg.params.N == 3);
    CHECK(cfg.params.lambda == 0.001);
    CHECK(std::isinf(cfg.solver.R));
    CHECK(cfg.solver.envelope_factor == 2.5);
    CHECK(cfg.seed == 42);
    CHECK(cfg.grid_nodes == 97);
    const auto grid = cfg.make_grid(1);
    CHECK(grid.nodes.size() == 193);
}

TEST_CASE("every violation is reported at once") {
    const char* bad = R"({
      "params": {"N": 2, "k": -1.0, "p": 0.0, "lambda": 1.0},
      "measure": {"h": 1.0, "rho": 2.0, "m": 1.0},
      "solver": {"tol": -1e-8},
      "grid": {"r_min": 1.0, "r_max": 0.5, "nodes": 10}
    })";
    try {
        (void)ExperimentConfig::parse(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.violations.size() >= 4);
    }
}

TEST_CASE("missing required fields are named") {
    try {
        (void)ExperimentConfig::parse(R"({"params": {"N": 3, "k": 1.5}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        bool saw_p = false;
        for (const auto& v : e.violations) saw_p = saw_p || v.find("params.p") != std::string::npos;
        CHECK(saw_p);
    }
}

TEST_CASE("malformed JSON is a config error") {
    CHECK_THROWS_AS((void)ExperimentConfig::parse("{ not json"), ConfigError);
}

TEST_CASE("finite truncation radius accepted as a number") {
    std::string text(kGood);
    const auto pos = text.find("\"inf\"");
    text.replace(pos, 5, "64.0");
    const auto cfg = ExperimentConfig::parse(text);
    CHECK(cfg.solver.R == 64.0);
}

TEST_CASE("atomic writes land complete files") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "halfriesz_cfg_test";
    fs::remove_all(dir);
    const auto path = (dir / "nested" / "x.json").string();
    write_file_atomic(path, "{\"ok\": true}\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "{\"ok\": true}\n");
    CHECK_FALSE(fs::exists(path + ".tmp"));
    fs::remove_all(dir);
}
