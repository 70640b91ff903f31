#pragma once

#include <complex>
#include <vector>

#include "fde/elliptic.hpp"
#include "fde/geometry.hpp"
#include "fde/scaled.hpp"

namespace fde {

/// Values of one scalar signal on a uniform time grid [0, t_max].
struct TimeSeries {
    double t_max = 0.0;
    std::vector<double> values;  // values[k] at t = k * dt, dt = t_max/(n-1)

    double dt() const { return t_max / (values.size() - 1); }
};

/// Spectral truncation/quadrature parameters of the Bromwich synthesis
/// u(t) = (e^t/pi) Re integral_0^S e^{its} f(1+is) ds.
struct BromwichParams {
    double s_max = 40.0;     // truncation S
    int gauss_order = 16;    // nodes per panel
    double panel_width = 0.0;  // 0 -> pi / t_max
};

/// Gauss panel nodes and weights covering [0, s_max].
struct SpectralNodes {
    std::vector<double> s;
    std::vector<double> w;
};
SpectralNodes spectral_nodes(const BromwichParams& bp, double t_max);

/// Dirichlet input g at one boundary point on a uniform time grid, via
/// truncated oscillatory quadrature of the inverse-Fourier representation.
/// Reports an a-priori truncation-tail estimate derived from the
/// |1+is|^{alpha0-6} decay of the integrand.
struct ProbeSignal {
    TimeSeries series;
    double truncation_estimate = 0.0;
    double max_imag = 0.0;  // spurious imaginary part, realness diagnostic
};
ProbeSignal synthesize_probe(Vec3 x, double t_max, int n_times, const ProbeConfig& probe,
                             double alpha0, const BromwichParams& bp);

/// Composite-Simpson Laplace transform of a uniform series plus an analytic
/// tail bound; throws if the tail bound exceeds tail_tol (relative).
struct LaplaceResult {
    double value = 0.0;
    double tail_bound = 0.0;
};
LaplaceResult laplace_transform(const TimeSeries& series, double tau, double tail_tol = 1e-6);

/// Neumann measurement on every boundary face node: values[node][time].
/// Node ordering is face-major (face 0..5, then row-major on the face).
struct Measurement {
    Grid grid;
    ProbeConfig probe;
    double t_max = 0.0;
    int n_times = 0;
    std::vector<std::vector<double>> series;  // per boundary node
    double max_imag = 0.0;
};

std::size_t boundary_node_count(const Grid& grid);

/// Simulates the forward measurement: per spectral node solve the
/// complex-shifted elliptic problem with boundary data tau^{-5} w0, trace,
/// then synthesize the time signal (conjugate symmetry halves the nodes).
Measurement simulate_measurement(const ProblemConfig& config, const ProbeConfig& probe,
                                 double t_max, int n_times, const BromwichParams& bp,
                                 double solver_tol = 1e-8);

/// Data-side indicator: Laplace-transform the measured Neumann series at tau,
/// subtract tau^{-5} dnu w0, pair with tau^5 w0 over the boundary.
ScaledValue indicator_from_data(const Measurement& meas, double tau, double alpha0);

}  // namespace fde
