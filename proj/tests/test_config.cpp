#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fde/config.hpp"

using namespace fde;

namespace {

struct TempConfig {
    std::string path;
    explicit TempConfig(const std::string& body) {
        static int counter = 0;
        path = "/tmp/fde_config_test_" + std::to_string(getpid()) + "_" +
               std::to_string(counter++) + ".cfg";
        std::ofstream out(path);
        out << body;
    }
    ~TempConfig() { std::remove(path.c_str()); }
};

const char* kMinimal = R"(
[problem]
alpha0 = 0.5
box_lo = -1 -1 -1
box_hi = 1 1 1
grid_n = 16
ball = 0 0 0 0.3
jump_kind = constant
jump_amplitude = 0.3

[probe]
flavor = ext
m = 1
center = 2 0 0
eta = 0.5

[run]
pipeline = sweep
tau_schedule = geometric 100 10000 5
out_dir = out/test
)";

}  // namespace

TEST_CASE("load_config: minimal experiment parses with defaults filled in") {
    TempConfig f(kMinimal);
    auto cfg = load_config(f.path);
    CHECK(cfg.problem.alpha0 == 0.5);
    CHECK(cfg.problem.box.n[0] == 16);
    REQUIRE(cfg.problem.obstacle.size() == 1);
    CHECK(cfg.problem.obstacle[0].radius == 0.3);
    CHECK(cfg.problem.jump.amplitude == 0.3);
    CHECK(cfg.probe.flavor == ProbeFlavor::ext);
    CHECK(cfg.probe.m == 1);
    CHECK(cfg.probe.eta == 0.5);
    CHECK(cfg.pipeline == Pipeline::sweep);
    REQUIRE(cfg.tau_schedule.size() == 5);
    CHECK(cfg.tau_schedule.front() == doctest::Approx(100.0));
    CHECK(cfg.tau_schedule.back() == doctest::Approx(10000.0));
    CHECK(cfg.out_dir == "out/test");
    // untouched defaults
    CHECK(cfg.workers == 1);
    CHECK(cfg.t_max == 12.0);
    CHECK(cfg.n_times == 1201);
    CHECK(cfg.roundtrip_taus.size() == 3);
}

TEST_CASE("load_config: explicit tau list is taken verbatim") {
    std::string body(kMinimal);
    body.replace(body.find("tau_schedule = geometric 100 10000 5"),
                 std::string("tau_schedule = geometric 100 10000 5").size(),
                 "tau_schedule = list 2 3 5 8");
    TempConfig f(body);
    auto cfg = load_config(f.path);
    REQUIRE(cfg.tau_schedule.size() == 4);
    CHECK(cfg.tau_schedule[2] == 5.0);
}

TEST_CASE("load_config: unknown keys are reported by name") {
    std::string body(kMinimal);
    body += "\nmystery_knob = 7\n";
    TempConfig f(body);
    try {
        load_config(f.path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mystery_knob") != std::string::npos);
    }
}

TEST_CASE("load_config: missing file throws") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("load_config: rejects an order outside (0,1)") {
    std::string body(kMinimal);
    body.replace(body.find("jump_amplitude = 0.3"),
                 std::string("jump_amplitude = 0.3").size(), "jump_amplitude = 0.6");
    TempConfig f(body);
    CHECK_THROWS_AS(load_config(f.path), ConfigError);  // alpha would exceed 1 inside D
}

TEST_CASE("load_config: rejects an exterior probe point inside the box") {
    std::string body(kMinimal);
    body.replace(body.find("center = 2 0 0"), std::string("center = 2 0 0").size(),
                 "center = 0.5 0 0");
    TempConfig f(body);
    CHECK_THROWS_AS(load_config(f.path), ConfigError);
}

TEST_CASE("pipeline_from_string: all names and a rejection") {
    CHECK(pipeline_from_string("sweep") == Pipeline::sweep);
    CHECK(pipeline_from_string("reconstruct") == Pipeline::reconstruct);
    CHECK(pipeline_from_string("threshold") == Pipeline::threshold);
    CHECK(pipeline_from_string("verify-oracles") == Pipeline::verify_oracles);
    CHECK(pipeline_from_string("roundtrip") == Pipeline::roundtrip);
    CHECK_THROWS_AS(pipeline_from_string("frobnicate"), ConfigError);
}
