#include <cmath>
#include <vector>

#include "doctest.h"
#include "fde/special.hpp"
#include "fde/timedomain.hpp"

using namespace fde;

namespace {

ProbeConfig ext_probe() {
    ProbeConfig pr;
    pr.flavor = ProbeFlavor::ext;
    pr.m = 0;
    pr.p = {2, 0, 0};
    pr.eta = 0.5;
    return pr;
}

ProblemConfig small_config(double amplitude, int n = 8) {
    ProblemConfig cfg;
    cfg.alpha0 = 0.5;
    cfg.box.lo = {-1, -1, -1};
    cfg.box.hi = {1, 1, 1};
    cfg.box.n = {n, n, n};
    if (amplitude != 0.0) {
        cfg.obstacle.push_back({{0, 0, 0}, 0.3});
        cfg.jump.amplitude = amplitude;
    }
    return cfg;
}

BromwichParams quick_bp() {
    BromwichParams bp;
    bp.s_max = 30.0;
    bp.gauss_order = 10;
    return bp;
}

}  // namespace

TEST_CASE("laplace_transform: matches the closed form for an exponential") {
    // integral_0^T e^{at} e^{-tau t} dt with the analytic tail appended
    double a = -0.5, t_max = 20.0;
    TimeSeries ts;
    ts.t_max = t_max;
    ts.values.resize(2001);
    for (std::size_t k = 0; k < ts.values.size(); ++k)
        ts.values[k] = std::exp(a * (t_max * k / (ts.values.size() - 1)));
    for (double tau : {2.0, 3.0, 5.0}) {
        auto res = laplace_transform(ts, tau);
        CHECK(res.value == doctest::Approx(1.0 / (tau - a)).epsilon(1e-8));
        CHECK(res.tail_bound < 1e-6 * std::fabs(res.value) + 1e-12);
    }
}

TEST_CASE("laplace_transform: zero series transforms to zero") {
    TimeSeries ts;
    ts.t_max = 10.0;
    ts.values.assign(1001, 0.0);
    auto res = laplace_transform(ts, 3.0);
    CHECK(res.value == 0.0);
}

TEST_CASE("laplace_transform: rejects a series truncated too early") {
    // e^{-0.01 t} over [0,2]: the unresolved tail dominates at small tau
    TimeSeries ts;
    ts.t_max = 2.0;
    ts.values.resize(201);
    for (std::size_t k = 0; k < ts.values.size(); ++k)
        ts.values[k] = std::exp(-0.01 * (2.0 * k / (ts.values.size() - 1)));
    CHECK_THROWS_AS(laplace_transform(ts, 1.5), NumericalError);
}

TEST_CASE("synthesize_probe: starts at zero and stays essentially real") {
    auto probe = ext_probe();
    Vec3 x{1.0, 0.3, -0.2};
    auto sig = synthesize_probe(x, 12.0, 601, probe, 0.5, quick_bp());
    REQUIRE(sig.series.values.size() == 601);
    double peak = 0.0;
    for (double v : sig.series.values) peak = std::max(peak, std::fabs(v));
    REQUIRE(peak > 0.0);
    CHECK(std::fabs(sig.series.values.front()) < 1e-6 * peak);
    CHECK(sig.max_imag < 1e-8 * peak);
    CHECK(sig.truncation_estimate < 1e-4 * peak);
}

TEST_CASE("synthesize_probe: Laplace transform returns tau^{-5} w0") {
    // the synthesized input is the inverse transform of tau^{-5} w0(x; tau),
    // so transforming back must close the loop
    auto probe = ext_probe();
    double alpha0 = 0.5;
    for (Vec3 x : {Vec3{1.0, 0.0, 0.0}, Vec3{-1.0, 0.7, 0.2}, Vec3{0.3, 1.0, -0.5}}) {
        auto sig = synthesize_probe(x, 14.0, 1401, probe, alpha0, quick_bp());
        for (double tau : {2.0, 3.0, 5.0}) {
            auto lap = laplace_transform(sig.series, tau);
            ComplexBackground bg(probe, {tau, 0.0}, alpha0);
            double expect = std::pow(tau, -5.0) * bg.w0(x).real();
            CHECK(lap.value == doctest::Approx(expect).epsilon(1e-3));
        }
    }
}

TEST_CASE("simulate_measurement: series cover every boundary node and stay real") {
    auto cfg = small_config(0.3);
    Grid grid(cfg.box);
    auto meas = simulate_measurement(cfg, ext_probe(), 12.0, 601, quick_bp(), 1e-8);
    CHECK(meas.series.size() == boundary_node_count(grid));
    CHECK(meas.n_times == 601);
    double peak = 0.0;
    for (const auto& s : meas.series) {
        REQUIRE(s.size() == 601);
        for (double v : s) peak = std::max(peak, std::fabs(v));
    }
    REQUIRE(peak > 0.0);
    CHECK(meas.max_imag < 1e-6 * peak);
}

TEST_CASE("indicator_from_data: vanishing jump gives a near-null indicator") {
    auto cfg = small_config(0.0);
    auto with = small_config(0.3);
    auto null_meas = simulate_measurement(cfg, ext_probe(), 12.0, 601, quick_bp(), 1e-9);
    auto jump_meas = simulate_measurement(with, ext_probe(), 12.0, 601, quick_bp(), 1e-9);
    double tau = 3.0;
    auto in = indicator_from_data(null_meas, tau, 0.5);
    auto ij = indicator_from_data(jump_meas, tau, 0.5);
    REQUIRE(!ij.is_zero());
    // the null run only carries quadrature noise, orders of magnitude below
    CHECK(in.log_abs() < ij.log_abs() - std::log(100.0));
}
