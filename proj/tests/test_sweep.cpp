#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "fde/sweep.hpp"

using namespace fde;

namespace {

ProblemConfig ball_config(double amplitude, int n = 8) {
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

ProbeConfig ext_probe() {
    ProbeConfig pr;
    pr.flavor = ProbeFlavor::ext;
    pr.m = 0;
    pr.p = {2, 0, 0};
    pr.eta = 0.5;
    return pr;
}

/// Synthetic sweep following the fitted log model exactly:
/// log|I| = -2 d ttilde + c log tau + b, sign fixed.
SweepResult synthetic_sweep(double d, double c, double b, double sign,
                            const std::vector<double>& taus, double floor_boost = 0.0) {
    SweepResult sw;
    sw.config = ball_config(sign >= 0 ? 0.3 : -0.3);
    sw.probe = ext_probe();
    for (double tau : taus) {
        IndicatorSample s;
        s.tau = tau;
        double ttilde = std::pow(tau, 0.25);
        double li = -2.0 * d * ttilde + c * std::log(tau) + b;
        s.indicator = ScaledValue::exp_of(li, sign);
        s.solver_residual = 1e-12;
        // noise floor is 1e3 * residual * abs_scale; keep it below the sample
        // unless the test wants the sample drowned
        s.abs_scale = ScaledValue::exp_of(li + floor_boost);
        s.scaled_log = li / ttilde;
        s.ok = true;
        sw.samples.push_back(s);
    }
    return sw;
}

}  // namespace

TEST_CASE("geometric_schedule: endpoints, length, constant ratio") {
    auto taus = geometric_schedule(100.0, 1e6, 5);
    REQUIRE(taus.size() == 5);
    CHECK(taus.front() == doctest::Approx(100.0));
    CHECK(taus.back() == doctest::Approx(1e6));
    for (int k = 1; k < 5; ++k)
        CHECK(taus[k] / taus[k - 1] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(geometric_schedule(0.5, 100.0, 5), ConfigError);
    CHECK_THROWS_AS(geometric_schedule(100.0, 10.0, 5), ConfigError);
    CHECK_THROWS_AS(geometric_schedule(10.0, 100.0, 1), ConfigError);
}

TEST_CASE("run_sweep: rejects bad schedules and overflow-prone tails") {
    auto cfg = ball_config(0.3);
    auto probe = ext_probe();
    CHECK_THROWS_AS(run_sweep(cfg, probe, {}, 1), ConfigError);
    CHECK_THROWS_AS(run_sweep(cfg, probe, {100.0, 100.0}, 1), ConfigError);
    CHECK_THROWS_AS(run_sweep(cfg, probe, {50.0, 10.0}, 1), ConfigError);
    // 2 tau^{1/4} * 1.2 > 600 for tau = 1e10
    CHECK_THROWS_AS(run_sweep(cfg, probe, {100.0, 1e10}, 1), ConfigError);
}

TEST_CASE("run_sweep: parallel and serial runs agree bitwise") {
    auto cfg = ball_config(0.3);
    auto probe = ext_probe();
    std::vector<double> taus = {300.0, 900.0, 2700.0, 8100.0};
    auto serial = run_sweep(cfg, probe, taus, 1, 1e-10);
    auto parallel = run_sweep(cfg, probe, taus, 3, 1e-10);
    REQUIRE(serial.samples.size() == parallel.samples.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const auto& a = serial.samples[i];
        const auto& b = parallel.samples[i];
        CHECK(a.ok);
        CHECK(b.ok);
        CHECK(std::memcmp(&a.indicator.mantissa, &b.indicator.mantissa, 8) == 0);
        CHECK(std::memcmp(&a.indicator.log_scale, &b.indicator.log_scale, 8) == 0);
        CHECK(a.scaled_log == b.scaled_log);
        CHECK(a.solver_residual == b.solver_residual);
    }
}

TEST_CASE("extract_distance: recovers the synthetic model exactly") {
    auto taus = geometric_schedule(1e3, 1e7, 10);
    auto sw = synthetic_sweep(0.7, -1.5, 2.0, +1.0, taus);
    auto fit = extract_distance(sw);
    CHECK(fit.usable_samples == 10);
    CHECK(fit.distance_estimate == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(fit.prefactor_exponent == doctest::Approx(-1.5).epsilon(1e-8));
    CHECK(fit.fit_residual < 1e-8);
    CHECK(fit.jump_sign == JumpSign::positive);
    CHECK(fit.sign_consistent);
    CHECK(fit.tau0_empirical == doctest::Approx(taus.front()));
}

TEST_CASE("extract_distance: negative indicators give a negative jump sign") {
    auto taus = geometric_schedule(1e3, 1e7, 8);
    auto fit = extract_distance(synthetic_sweep(0.4, -1.0, 0.0, -1.0, taus));
    CHECK(fit.jump_sign == JumpSign::negative);
    CHECK(fit.distance_estimate == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("extract_distance: refuses a fit on fewer than 4 usable samples") {
    auto taus = geometric_schedule(1e3, 1e5, 3);
    CHECK_THROWS_AS(extract_distance(synthetic_sweep(0.7, -1.5, 2.0, 1.0, taus)),
                    NumericalError);
}

TEST_CASE("extract_distance: all-floor sweep reports no jump without throwing") {
    auto taus = geometric_schedule(1e3, 1e7, 8);
    // abs_scale boosted so the 1e3 * residual * scale floor swallows every sample
    auto sw = synthetic_sweep(0.7, -1.5, 2.0, 1.0, taus, 25.0);
    auto fit = extract_distance(sw);
    CHECK(fit.usable_samples == 0);
    CHECK(fit.jump_sign == JumpSign::none);
}

TEST_CASE("threshold_test: trichotomy against the fitted threshold") {
    auto taus = geometric_schedule(1e3, 1e7, 10);
    auto pos = synthetic_sweep(0.7, -1.5, 2.0, +1.0, taus);
    auto fitp = extract_distance(pos);
    CHECK(threshold_test(pos, fitp, 0.7) == ThresholdVerdict::tends_to_zero);
    CHECK(threshold_test(pos, fitp, 2.8) == ThresholdVerdict::tends_to_plus_inf);
    CHECK(threshold_test(pos, fitp, 1.4 * 1.01) ==
          ThresholdVerdict::indeterminate_near_threshold);
    auto neg = synthetic_sweep(0.7, -1.5, 2.0, -1.0, taus);
    auto fitn = extract_distance(neg);
    CHECK(threshold_test(neg, fitn, 2.8) == ThresholdVerdict::tends_to_minus_inf);
}

TEST_CASE("threshold_test: requires a usable fit") {
    auto taus = geometric_schedule(1e3, 1e7, 8);
    auto sw = synthetic_sweep(0.7, -1.5, 2.0, 1.0, taus, 25.0);
    auto fit = extract_distance(sw);
    CHECK_THROWS_AS(threshold_test(sw, fit, 1.0), NumericalError);
}
