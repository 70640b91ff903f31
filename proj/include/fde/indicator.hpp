#pragma once

#include <string>
#include <vector>

#include "fde/elliptic.hpp"
#include "fde/geometry.hpp"
#include "fde/scaled.hpp"
#include "fde/special.hpp"

namespace fde {

/// One tau sample of the indicator: value, the scaled-log quantity
/// tau^{-alpha0/2} log|I| whose limit is -2 dist(K,D), the volume-integral
/// sandwich bounds, and solver diagnostics.
struct IndicatorSample {
    double tau = 0.0;
    ScaledValue indicator;
    double scaled_log = 0.0;
    ScaledValue lower_bound, upper_bound;
    ScaledValue abs_scale;       // integral of |dnu z| |w0| over the boundary
    double solver_residual = 0.0;
    int solver_iterations = 0;
    bool ok = false;
    std::string error;
};

/// Boundary form of the indicator: integral over the box boundary of
/// (normal derivative of the scattered field) times the background solution.
IndicatorSample indicator_boundary(double tau, const ProblemConfig& config,
                                   const ProbeConfig& probe, double solver_tol = 1e-10,
                                   int trace_order = 2);

/// Volume-integral sandwich bounds (lower uses the extra tau^{alpha0-alpha}
/// damping factor); integrands vanish outside D.
struct BoundPair {
    ScaledValue lower, upper;
};
BoundPair lemma31_bounds(double tau, const ProblemConfig& config, const ProbeConfig& probe);

/// Crude envelope tau^{alpha0} (tau^{max|h|} + 1) * integral_D w0^2.
ScaledValue coarse_bound_33(double tau, const ProblemConfig& config, const ProbeConfig& probe);

/// Report of the scaling behavior of J(tau) = integral_D
/// (tau^{C dist(x, boundary D)^gamma} - 1) v^2 dx across a tau sweep.
struct ScalingReport {
    std::vector<double> taus;
    std::vector<double> log_J;              // log J(tau)
    std::vector<double> shifted_log;        // log J + 2 ttilde dist
    double fitted_exponent = 0.0;           // c in shifted_log ~ c log tau + b
    double fitted_offset = 0.0;
    double fit_residual = 0.0;              // rms residual of the log-log fit
    double envelope_constant = 0.0;         // fitted C2 of the upper envelope
    double envelope_spread = 0.0;           // max/min of the envelope ratio
};
ScalingReport lemma32_check(const ProblemConfig& config, const ProbeConfig& probe,
                            const std::vector<double>& tau_list, double beta);

}  // namespace fde
