#include "fde/indicator.hpp"

#include <cmath>

namespace fde {

namespace {

// deterministic node sum of f(x) h^3 over interior grid nodes lying in D
template <class F>
ScaledValue volume_sum_over_D(const ProblemConfig& config, const F& f) {
    Grid grid(config.box);
    double cell = grid.h.x * grid.h.y * grid.h.z;
    ScaledValue acc;
    for (int k = 1; k < grid.nodes[2] - 1; ++k)
        for (int j = 1; j < grid.nodes[1] - 1; ++j)
            for (int i = 1; i < grid.nodes[0] - 1; ++i) {
                Vec3 x = grid.point(i, j, k);
                if (dist_to_boundary_of_D(x, config.obstacle) <= 0.0) continue;
                acc = acc + ScaledValue::of(cell) * f(x);
            }
    return acc;
}

double max_abs_jump(const ProblemConfig& config) {
    if (config.obstacle.empty()) return 0.0;
    if (config.jump.kind == JumpKind::constant) return std::fabs(config.jump.amplitude);
    double rmax = 0.0;
    for (const auto& b : config.obstacle) rmax = std::max(rmax, b.radius);
    return std::fabs(config.jump.amplitude) * std::pow(rmax, config.jump.gamma);
}

}  // namespace

BoundPair lemma31_bounds(double tau, const ProblemConfig& config, const ProbeConfig& probe) {
    auto params = SpecialSolutionParams::make(probe, tau, config.alpha0);
    BackgroundEvaluator bg(params);
    double tau_a0 = std::pow(tau, config.alpha0);
    double log_tau = std::log(tau);
    BoundPair out;
    out.upper = volume_sum_over_D(config, [&](Vec3 x) {
        ScaledValue w = bg.w0(x);
        double shift = std::exp(config.alpha_at(x) * log_tau) - tau_a0;
        return ScaledValue::of(shift) * w * w;
    });
    out.lower = volume_sum_over_D(config, [&](Vec3 x) {
        ScaledValue w = bg.w0(x);
        double ta = std::exp(config.alpha_at(x) * log_tau);
        return ScaledValue::of((tau_a0 / ta) * (ta - tau_a0)) * w * w;
    });
    return out;
}

ScaledValue coarse_bound_33(double tau, const ProblemConfig& config, const ProbeConfig& probe) {
    auto params = SpecialSolutionParams::make(probe, tau, config.alpha0);
    BackgroundEvaluator bg(params);
    ScaledValue mass = volume_sum_over_D(config, [&](Vec3 x) {
        ScaledValue w = bg.w0(x);
        return w * w;
    });
    double factor = std::pow(tau, config.alpha0) * (std::pow(tau, max_abs_jump(config)) + 1.0);
    return ScaledValue::of(factor) * mass;
}

IndicatorSample indicator_boundary(double tau, const ProblemConfig& config,
                                   const ProbeConfig& probe, double solver_tol,
                                   int trace_order) {
    IndicatorSample s;
    s.tau = tau;
    try {
        config.validate();
        probe.validate(config.box);
        auto params = SpecialSolutionParams::make(probe, tau, config.alpha0);
        BackgroundEvaluator bg(params);
        Grid grid(config.box);
        SolveResult z = solve_scattered(grid, config, bg, solver_tol);
        s.solver_residual = z.stats.rel_residual;
        s.solver_iterations = z.stats.iterations;
        BoundaryField trace = neumann_trace(z.field, grid, trace_order);
        ScaledValue acc, acc_abs;
        for (int face = 0; face < 6; ++face) {
            auto fg = face_geometry(face);
            int na = 0, nb = 0;
            // tangential node counts match the trace layout
            if (fg.axis == 0) { na = grid.nodes[1]; nb = grid.nodes[2]; }
            if (fg.axis == 1) { na = grid.nodes[0]; nb = grid.nodes[2]; }
            if (fg.axis == 2) { na = grid.nodes[0]; nb = grid.nodes[1]; }
            for (int b = 0; b < nb; ++b)
                for (int a = 0; a < na; ++a) {
                    double dn = trace.values[face][static_cast<std::size_t>(b) * na + a];
                    if (dn == 0.0) continue;
                    double wgt = face_node_weight(grid, face, a, b);
                    ScaledValue w0 = bg.w0(face_node_point(grid, face, a, b));
                    ScaledValue term = ScaledValue::make(wgt * dn, trace.log_scale) * w0;
                    acc = acc + term;
                    acc_abs = acc_abs + term.abs();
                }
        }
        s.indicator = acc;
        s.abs_scale = acc_abs;
        s.scaled_log = acc.is_zero() ? 0.0 : acc.log_abs() / params.ttilde;
        auto bounds = lemma31_bounds(tau, config, probe);
        s.lower_bound = bounds.lower;
        s.upper_bound = bounds.upper;
        s.ok = true;
    } catch (const std::exception& e) {
        s.ok = false;
        s.error = e.what();
    }
    return s;
}

ScalingReport lemma32_check(const ProblemConfig& config, const ProbeConfig& probe,
                            const std::vector<double>& tau_list, double beta) {
    if (tau_list.size() < 4)
        throw ConfigError("lemma32_check: at least 4 tau samples required for a fit");
    if (config.obstacle.empty())
        throw ConfigError("lemma32_check: a nonempty obstacle is required");
    double C = std::fabs(config.jump.amplitude);
    double gamma = config.jump.kind == JumpKind::constant ? 0.0 : config.jump.gamma;
    double d = probe_distance(probe, config.obstacle);

    ScalingReport rep;
    std::vector<double> env_log;
    for (double tau : tau_list) {
        auto params = SpecialSolutionParams::make(probe, tau, beta);
        BackgroundEvaluator bg(params);
        double log_tau = std::log(tau);
        ScaledValue J = volume_sum_over_D(config, [&](Vec3 x) {
            ScaledValue v = bg.v(x);
            double din = dist_to_boundary_of_D(x, config.obstacle);
            double weight = std::expm1(C * std::pow(din, gamma) * log_tau);
            return ScaledValue::of(weight) * v * v;
        });
        ScaledValue E = volume_sum_over_D(config, [&](Vec3 x) {
            ScaledValue v = bg.v(x);
            return v * v;
        });
        rep.taus.push_back(tau);
        rep.log_J.push_back(J.log_abs());
        rep.shifted_log.push_back(J.log_abs() + 2.0 * params.ttilde * d);
        env_log.push_back(E.log_abs() + 2.0 * params.ttilde * d +
                          beta * (probe.m + 2) * log_tau);
    }
    // least squares of shifted_log against log tau
    std::size_t n = rep.taus.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::log(rep.taus[i]), y = rep.shifted_log[i];
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double det = n * sxx - sx * sx;
    rep.fitted_exponent = (n * sxy - sx * sy) / det;
    rep.fitted_offset = (sy * sxx - sx * sxy) / det;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = rep.shifted_log[i] -
                   (rep.fitted_exponent * std::log(rep.taus[i]) + rep.fitted_offset);
        ss += r * r;
    }
    rep.fit_residual = std::sqrt(ss / n);
    double emax = env_log[0], emin = env_log[0];
    for (double e : env_log) {
        emax = std::max(emax, e);
        emin = std::min(emin, e);
    }
    rep.envelope_constant = std::exp(emax);
    rep.envelope_spread = std::exp(emax - emin);
    return rep;
}

}  // namespace fde
