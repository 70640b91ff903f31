#include "fde/timedomain.hpp"

#include <cmath>
#include <cstdio>

#include "fde/quadrature.hpp"
#include "fde/special.hpp"

namespace fde {

namespace {

using cplx = std::complex<double>;

}  // namespace

SpectralNodes spectral_nodes(const BromwichParams& bp, double t_max) {
    if (!(bp.s_max > 0.0) || !(t_max > 0.0))
        throw ConfigError("spectral_nodes: s_max and t_max must be positive");
    double width = bp.panel_width > 0.0 ? bp.panel_width : M_PI / t_max;
    int panels = std::max(1, static_cast<int>(std::ceil(bp.s_max / width)));
    auto [gx, gw] = gauss_legendre(bp.gauss_order);
    SpectralNodes out;
    double w = bp.s_max / panels;
    for (int p = 0; p < panels; ++p) {
        double c = (p + 0.5) * w;
        for (int j = 0; j < bp.gauss_order; ++j) {
            out.s.push_back(c + 0.5 * w * gx[j]);
            out.w.push_back(0.5 * w * gw[j]);
        }
    }
    return out;
}

ProbeSignal synthesize_probe(Vec3 x, double t_max, int n_times, const ProbeConfig& probe,
                             double alpha0, const BromwichParams& bp) {
    if (n_times < 2) throw ConfigError("synthesize_probe: need at least 2 time samples");
    SpectralNodes nodes = spectral_nodes(bp, t_max);
    std::size_t ns = nodes.s.size();
    std::vector<cplx> coef(ns);
    double max_imag = 0.0;
    for (std::size_t j = 0; j < ns; ++j) {
        cplx sigma(1.0, nodes.s[j]);
        cplx w0 = w0_eval_complex(x, probe, sigma, alpha0);
        coef[j] = nodes.w[j] * std::pow(sigma, -5.0) * w0;
        // conjugate-symmetry defect of the evaluator (realness diagnostic)
        cplx w0c = w0_eval_complex(x, probe, std::conj(sigma), alpha0);
        max_imag = std::max(max_imag, std::abs(w0c - std::conj(w0)));
    }
    ProbeSignal out;
    out.max_imag = max_imag;
    out.series.t_max = t_max;
    out.series.values.resize(n_times);
    double dt = t_max / (n_times - 1);
    for (int k = 0; k < n_times; ++k) {
        double t = k * dt;
        double acc = 0.0;
        for (std::size_t j = 0; j < ns; ++j)
            acc += (std::cos(t * nodes.s[j]) * coef[j].real() -
                    std::sin(t * nodes.s[j]) * coef[j].imag());
        out.series.values[k] = std::exp(t) / M_PI * acc;
    }
    // tail estimate from the |1+is|^{alpha0-6} decay: the integrand magnitude
    // at S extrapolated with exponent alpha0-6 integrates to |F(S)| S/(5-alpha0)
    cplx sigma_end(1.0, bp.s_max);
    double f_end = std::abs(std::pow(sigma_end, -5.0) *
                            w0_eval_complex(x, probe, sigma_end, alpha0));
    out.truncation_estimate = std::exp(t_max) / M_PI * f_end * bp.s_max / (5.0 - alpha0);
    return out;
}

LaplaceResult laplace_transform(const TimeSeries& series, double tau, double tail_tol) {
    if (!(tau > 1.0)) throw ConfigError("laplace_transform: tau must exceed 1");
    std::size_t n = series.values.size();
    if (n < 3) throw ConfigError("laplace_transform: series too short");
    double dt = series.dt();
    auto f = [&](std::size_t k) { return std::exp(-tau * k * dt) * series.values[k]; };
    // composite Simpson; a trailing trapezoid picks up the last interval when
    // the sample count is even
    double acc = 0.0;
    std::size_t last = (n % 2 == 1) ? n - 1 : n - 2;
    for (std::size_t k = 0; k + 2 <= last; k += 2)
        acc += dt / 3.0 * (f(k) + 4.0 * f(k + 1) + f(k + 2));
    if (n % 2 == 0) acc += 0.5 * dt * (f(n - 2) + f(n - 1));

    LaplaceResult out;
    out.value = acc;
    // tail bound assuming |f(t)| <= |f(t_max)| e^{t - t_max} beyond the grid
    double f_end = std::fabs(series.values[n - 1]);
    out.tail_bound = f_end * std::exp(-tau * series.t_max) / (tau - 1.0);
    double scale = std::fabs(out.value);
    for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, std::fabs(f(k)) * series.t_max);
    if (out.tail_bound > tail_tol * std::max(scale, 1e-300)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "laplace_transform: tail bound %.3e exceeds tolerance; "
                      "increase t_max beyond %.3g",
                      out.tail_bound, series.t_max);
        throw NumericalError(buf);
    }
    return out;
}

std::size_t boundary_node_count(const Grid& grid) {
    return boundary_nodes(grid).size();
}

Measurement simulate_measurement(const ProblemConfig& config, const ProbeConfig& probe,
                                 double t_max, int n_times, const BromwichParams& bp,
                                 double solver_tol) {
    config.validate();
    probe.validate(config.box);
    Grid grid(config.box);
    ScalarField3D alpha = order_field(config);
    // the Laplacian part of the operator is tau-independent; assemble once
    SparseOperator op = assemble(grid, alpha, 2.0);
    auto bnodes = boundary_nodes(grid);
    SpectralNodes nodes = spectral_nodes(bp, t_max);
    std::size_t ns = nodes.s.size(), nb = bnodes.size();

    Measurement meas{grid, probe, t_max, n_times, {}, 0.0};
    meas.series.assign(nb, std::vector<double>(n_times, 0.0));

    std::vector<double> cos_t(n_times), sin_t(n_times);
    double dt = t_max / (n_times - 1);
    std::vector<cplx> field(grid.node_count());
    std::vector<cplx> shift(op.n), rhs(op.n), x;
    double ix = 1.0 / (grid.h.x * grid.h.x);
    double iy = 1.0 / (grid.h.y * grid.h.y);
    double iz = 1.0 / (grid.h.z * grid.h.z);

    for (std::size_t jn = 0; jn < ns; ++jn) {
        cplx sigma(1.0, nodes.s[jn]);
        cplx log_sigma = std::log(sigma);
        ComplexBackground bg(probe, sigma, config.alpha0);
        cplx gscale = std::pow(sigma, -5.0);

        std::fill(field.begin(), field.end(), cplx(0.0));
        for (const auto& bn : bnodes) {
            auto fg = face_geometry(bn.face);
            Vec3 pt = face_node_point(grid, bn.face, bn.a, bn.b);
            int ijk[3];
            int t0 = fg.axis == 0 ? 1 : 0, t1 = fg.axis == 2 ? 1 : 2;
            ijk[fg.axis] = fg.side == 0 ? 0 : grid.nodes[fg.axis] - 1;
            ijk[t0] = bn.a;
            ijk[t1] = bn.b;
            field[grid.node_index(ijk[0], ijk[1], ijk[2])] = gscale * bg.w0(pt);
        }
        for (std::size_t r = 0; r < op.n; ++r) rhs[r] = cplx(0.0);
        for (int k = 1; k < grid.nodes[2] - 1; ++k)
            for (int j = 1; j < grid.nodes[1] - 1; ++j)
                for (int i = 1; i < grid.nodes[0] - 1; ++i) {
                    std::size_t r = grid.interior_index(i, j, k);
                    shift[r] = std::exp(alpha.data[alpha.index(i, j, k)] * log_sigma);
                    auto lift = [&](int ii, int jj, int kk, double coef) {
                        if (!grid.is_interior(ii, jj, kk))
                            rhs[r] += coef * field[grid.node_index(ii, jj, kk)];
                    };
                    lift(i - 1, j, k, ix);
                    lift(i + 1, j, k, ix);
                    lift(i, j - 1, k, iy);
                    lift(i, j + 1, k, iy);
                    lift(i, j, k - 1, iz);
                    lift(i, j, k + 1, iz);
                }
        CgStats st = cg_solve(op, shift, rhs, x, solver_tol, 4000);
        if (!st.converged) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "simulate_measurement: complex solve failed at spectral node %zu "
                          "(s = %.4g, residual %.3e)",
                          jn, nodes.s[jn], st.rel_residual);
            throw NumericalError(buf);
        }
        for (int k = 1; k < grid.nodes[2] - 1; ++k)
            for (int j = 1; j < grid.nodes[1] - 1; ++j)
                for (int i = 1; i < grid.nodes[0] - 1; ++i)
                    field[grid.node_index(i, j, k)] = x[grid.interior_index(i, j, k)];

        for (int k = 0; k < n_times; ++k) {
            cos_t[k] = std::cos(k * dt * nodes.s[jn]);
            sin_t[k] = std::sin(k * dt * nodes.s[jn]);
        }
        double wq = nodes.w[jn] / M_PI;
        for (std::size_t nbi = 0; nbi < nb; ++nbi) {
            const auto& bn = bnodes[nbi];
            auto fg = face_geometry(bn.face);
            int t0 = fg.axis == 0 ? 1 : 0, t1 = fg.axis == 2 ? 1 : 2;
            int ijk[3];
            ijk[fg.axis] = fg.side == 0 ? 0 : grid.nodes[fg.axis] - 1;
            ijk[t0] = bn.a;
            ijk[t1] = bn.b;
            int step = fg.side == 0 ? 1 : -1;
            double h = (&grid.h.x)[fg.axis];
            auto at = [&](int depth) {
                int c[3] = {ijk[0], ijk[1], ijk[2]};
                c[fg.axis] += step * depth;
                return field[grid.node_index(c[0], c[1], c[2])];
            };
            cplx dnu = (3.0 * at(0) - 4.0 * at(1) + at(2)) / (2.0 * h);
            auto& row = meas.series[nbi];
            for (int k = 0; k < n_times; ++k)
                row[k] += wq * (cos_t[k] * dnu.real() - sin_t[k] * dnu.imag());
        }
    }
    // apply the e^t envelope once
    for (auto& row : meas.series)
        for (int k = 0; k < n_times; ++k) row[k] *= std::exp(k * dt);
    return meas;
}

ScaledValue indicator_from_data(const Measurement& meas, double tau, double alpha0) {
    auto params = SpecialSolutionParams::make(meas.probe, tau, alpha0);
    BackgroundEvaluator bg(params);
    auto bnodes = boundary_nodes(meas.grid);
    if (bnodes.size() != meas.series.size())
        throw ConfigError("indicator_from_data: measurement does not match its grid");

    // Reference trace from the same grid and stencils as the measurement,
    // solved with the background order everywhere: the continuum identity
    // between the data-side and boundary-side indicators only survives
    // discretization when both sides share the discrete operator.
    ProblemConfig background;
    background.alpha0 = alpha0;
    background.box = meas.grid.box;
    SolveResult w0_solve = solve_total(meas.grid, background, bg, 1e-12);
    BoundaryField ref = neumann_trace(w0_solve.field, meas.grid, 2);

    double tau5 = std::pow(tau, 5.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < bnodes.size(); ++i) {
        const auto& bn = bnodes[i];
        Vec3 pt = face_node_point(meas.grid, bn.face, bn.a, bn.b);
        TimeSeries ts{meas.t_max, meas.series[i]};
        double u_hat = laplace_transform(ts, tau).value;
        double w0 = bg.w0(pt).to_double();
        auto fg = face_geometry(bn.face);
        int na = fg.axis == 0 ? meas.grid.nodes[1] : meas.grid.nodes[0];
        double dnu_w0 = ref.values[bn.face][static_cast<std::size_t>(bn.b) * na + bn.a] *
                        std::exp(ref.log_scale);
        double wgt = face_node_weight(meas.grid, bn.face, bn.a, bn.b);
        acc += wgt * (u_hat - dnu_w0 / tau5) * tau5 * w0;
    }
    return ScaledValue::of(acc);
}

}  // namespace fde
