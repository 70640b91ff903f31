#pragma once

#include <complex>

#include "fde/geometry.hpp"
#include "fde/scaled.hpp"

namespace fde {

/// Parameters for one evaluation of the background special solution.
/// ttilde = tau^{beta/2}; beta equals alpha0 everywhere in the pipeline but
/// is kept explicit because the scaling checks are stated for general beta.
struct SpecialSolutionParams {
    ProbeConfig probe;
    double tau = 2.0;
    double beta = 0.5;
    double ttilde = 0.0;

    static SpecialSolutionParams make(const ProbeConfig& probe, double tau, double beta) {
        if (!(tau > 1.0)) throw ConfigError("special solution: tau must exceed 1");
        if (!(beta > 0.0 && beta < 1.0))
            throw ConfigError("special solution: beta must lie in (0,1)");
        return {probe, tau, beta, std::pow(tau, 0.5 * beta)};
    }
};

/// Source moment Psi_{*,m}(x): (eta^2-|x-p|^2)^m on the probe ball for ext,
/// the shell product for int; zero outside the support.  Nonnegative.
double psi_eval(Vec3 x, const ProbeConfig& probe);

/// a_m(ttilde) = (1/ttilde) * integral_0^1 s (1-s^2)^m sinh(eta ttilde s) ds,
/// carried as mantissa * exp(log_scale) since it grows like exp(eta ttilde).
ScaledValue coeff_a(int m, double eta, double ttilde);

/// b_m(ttilde) = (1/ttilde) * integral_{R1}^{R2} s (R2^2-s^2)^m (s^2-R1^2)^m
/// exp(-s ttilde) ds, scaled (decays like exp(-R1 ttilde)).
ScaledValue coeff_b(int m, double r1, double r2, double ttilde);

/// Large-ttilde asymptote of a_m: eta 2^{m-1} m! e^{ttilde eta}/(ttilde eta)^{m+2}.
ScaledValue coeff_a_asymptote(int m, double eta, double ttilde);

/// Large-ttilde asymptote of b_m:
/// 2^m m! R1^{m+1} (R2^2-R1^2)^m e^{-R1 ttilde}/ttilde^{m+2}.
ScaledValue coeff_b_asymptote(int m, double r1, double r2, double ttilde);

/// Closed form of the ext special solution for |x-p| > eta:
/// eta^{2(1+m)} e^{-ttilde |x-p|}/|x-p| * a_m(ttilde).
ScaledValue v_exterior(Vec3 x, const SpecialSolutionParams& params);

/// Closed form of the int special solution for |x-p| < R1:
/// sinh(ttilde |x-p|)/|x-p| * b_m(ttilde); ttilde * b_m at x = p.
ScaledValue v_interior(Vec3 x, const SpecialSolutionParams& params);

ScaledValue v_eval(Vec3 x, const SpecialSolutionParams& params);

/// Background solution w0 = tau^{alpha0-1} v_{*,m}(x; beta)|_{beta=alpha0}.
ScaledValue w0_eval(Vec3 x, const SpecialSolutionParams& params);

/// Analytic normal derivative of w0 at a boundary point with outward normal n.
ScaledValue w0_normal_derivative(Vec3 x, Vec3 n, const SpecialSolutionParams& params);

/// Evaluator that caches the coefficient integral a_m/b_m, so sampling the
/// background solution over a grid costs one exponential per node.
class BackgroundEvaluator {
 public:
    explicit BackgroundEvaluator(const SpecialSolutionParams& params);

    ScaledValue v(Vec3 x) const;
    ScaledValue w0(Vec3 x) const;
    ScaledValue w0_normal(Vec3 x, Vec3 n) const;
    const SpecialSolutionParams& params() const { return params_; }

 private:
    SpecialSolutionParams params_;
    ScaledValue coeff_;
    double tau_pow_log_;  // (beta - 1) ln tau
};

/// Brute-force quadrature of the volume-integral definition of v_{*,m}
/// (test oracle; axisymmetric 2D quadrature about the p-x axis).
double v_quadrature_oracle(Vec3 x, const SpecialSolutionParams& params, int order = 96);

// --- complex spectral-parameter path (Bromwich synthesis) -------------------

/// v_{*,m}(x; beta) at complex tau with Re tau > 1; principal-branch powers.
/// No scaled carry: |ttilde| stays modest on the Bromwich line.
std::complex<double> v_eval_complex(Vec3 x, const ProbeConfig& probe,
                                    std::complex<double> tau, double beta);

/// w0 at complex tau: tau^{alpha0-1} v(x; alpha0).
std::complex<double> w0_eval_complex(Vec3 x, const ProbeConfig& probe,
                                     std::complex<double> tau, double alpha0);

std::complex<double> w0_normal_derivative_complex(Vec3 x, Vec3 n, const ProbeConfig& probe,
                                                  std::complex<double> tau, double alpha0);

/// Complex-parameter analogue of BackgroundEvaluator: caches the coefficient
/// integral for a fixed spectral parameter.
class ComplexBackground {
 public:
    ComplexBackground(const ProbeConfig& probe, std::complex<double> tau, double alpha0);

    std::complex<double> v(Vec3 x) const;
    std::complex<double> w0(Vec3 x) const;
    std::complex<double> w0_normal(Vec3 x, Vec3 n) const;
    std::complex<double> tau() const { return tau_; }

 private:
    ProbeConfig probe_;
    std::complex<double> tau_, ttilde_, coeff_, tau_pow_;
};

}  // namespace fde
