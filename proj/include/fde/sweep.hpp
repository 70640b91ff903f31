#pragma once

#include <string>
#include <vector>

#include "fde/geometry.hpp"
#include "fde/indicator.hpp"

namespace fde {

struct SweepResult {
    ProblemConfig config;
    ProbeConfig probe;
    std::vector<IndicatorSample> samples;  // ascending tau
};

enum class JumpSign { positive, negative, none };

struct SweepFit {
    double distance_estimate = 0.0;
    JumpSign jump_sign = JumpSign::none;
    double prefactor_exponent = 0.0;  // c of the c*log tau term, informational
    double fit_residual = 0.0;        // weighted rms of the log-model residual
    double tau0_empirical = 0.0;      // smallest sampled tau after which sign is stable
    int usable_samples = 0;
    bool sign_consistent = true;      // sign stable over the upper half of the sweep
};

enum class ThresholdVerdict {
    tends_to_zero,
    tends_to_plus_inf,
    tends_to_minus_inf,
    indeterminate_near_threshold,
};

/// Runs indicator_boundary over the schedule.  Per-sample failures are
/// recorded, not fatal; an all-failed sweep throws.  The schedule must
/// respect the overflow guard 2 tau^{alpha0/2} dist <= 600.
SweepResult run_sweep(const ProblemConfig& config, const ProbeConfig& probe,
                      const std::vector<double>& tau_schedule, int workers = 1,
                      double solver_tol = 1e-10);

/// Geometric schedule tau_min * r^k, k = 0..count-1.
std::vector<double> geometric_schedule(double tau_min, double tau_max, int count);

/// Extracts dist(K,D) by weighted least squares of
/// log|I| = -2 d tau^{alpha0/2} + c log tau + b over the usable samples.
/// Samples below the noise floor (1e3 * solver residual * boundary scale)
/// are excluded.  Throws if fewer than 4 usable samples remain and the
/// sweep is not a clean null (all samples at the floor -> jump_sign none).
SweepFit extract_distance(const SweepResult& sweep);

/// Empirical trichotomy: trend of exp(tau^{alpha0/2} T) I(tau) over the top
/// half of the sweep, cross-checked against the fitted distance.
ThresholdVerdict threshold_test(const SweepResult& sweep, const SweepFit& fit, double T);

std::string to_string(JumpSign s);
std::string to_string(ThresholdVerdict v);

}  // namespace fde
