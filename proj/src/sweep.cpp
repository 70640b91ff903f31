#include "fde/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace fde {

std::vector<double> geometric_schedule(double tau_min, double tau_max, int count) {
    if (!(tau_min > 1.0) || !(tau_max > tau_min) || count < 2)
        throw ConfigError("geometric_schedule: need 1 < tau_min < tau_max and count >= 2");
    std::vector<double> out(count);
    double r = std::pow(tau_max / tau_min, 1.0 / (count - 1));
    for (int k = 0; k < count; ++k) out[k] = tau_min * std::pow(r, k);
    return out;
}

SweepResult run_sweep(const ProblemConfig& config, const ProbeConfig& probe,
                      const std::vector<double>& tau_schedule, int workers,
                      double solver_tol) {
    config.validate();
    probe.validate(config.box);
    if (tau_schedule.empty()) throw ConfigError("run_sweep: empty tau schedule");
    for (std::size_t i = 1; i < tau_schedule.size(); ++i)
        if (!(tau_schedule[i] > tau_schedule[i - 1]))
            throw ConfigError("run_sweep: tau schedule must be strictly increasing");
    if (!config.obstacle.empty()) {
        double d = probe_distance(probe, config.obstacle);
        double guard = 2.0 * std::pow(tau_schedule.back(), 0.5 * config.alpha0) * d;
        if (guard > 600.0) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "run_sweep: overflow guard violated: 2 tau^{alpha0/2} dist = %.1f > 600",
                          guard);
            throw ConfigError(buf);
        }
    }
    SweepResult res;
    res.config = config;
    res.probe = probe;
    res.samples.resize(tau_schedule.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tau_schedule.size()) return;
            res.samples[i] = indicator_boundary(tau_schedule[i], config, probe, solver_tol);
        }
    };
    int nw = std::max(1, workers);
    if (nw == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nw; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    bool any_ok = false;
    for (const auto& s : res.samples) any_ok = any_ok || s.ok;
    if (!any_ok) throw NumericalError("run_sweep: every tau sample failed");
    return res;
}

namespace {

bool above_noise_floor(const IndicatorSample& s) {
    if (!s.ok || s.indicator.is_zero()) return false;
    ScaledValue floor =
        ScaledValue::of(1e3 * std::max(s.solver_residual, 1e-16)) * s.abs_scale;
    return floor.abs() < s.indicator.abs();
}

}  // namespace

SweepFit extract_distance(const SweepResult& sweep) {
    const auto& samples = sweep.samples;
    double alpha0 = sweep.config.alpha0;
    std::vector<const IndicatorSample*> usable;
    for (const auto& s : samples)
        if (above_noise_floor(s)) usable.push_back(&s);

    SweepFit fit;
    fit.usable_samples = static_cast<int>(usable.size());
    if (usable.empty()) {
        fit.jump_sign = JumpSign::none;  // fit refused: nothing above the noise floor
        return fit;
    }
    if (usable.size() < 4)
        throw NumericalError("extract_distance: fewer than 4 usable samples above the "
                             "noise floor");

    // weighted least squares of log|I| = -2d ttilde + c log tau + b
    double a[3][3] = {};
    double rhs[3] = {};
    for (const auto* s : usable) {
        double ttilde = std::pow(s->tau, 0.5 * alpha0);
        double row[3] = {ttilde, std::log(s->tau), 1.0};
        double y = s->indicator.log_abs();
        double w = 1.0 / std::max(s->solver_residual, 1e-14);
        for (int i = 0; i < 3; ++i) {
            rhs[i] += w * row[i] * y;
            for (int j = 0; j < 3; ++j) a[i][j] += w * row[i] * row[j];
        }
    }
    // 3x3 Gaussian elimination with partial pivoting
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
        m[i][3] = rhs[i];
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int rr = c + 1; rr < 3; ++rr)
            if (std::fabs(m[rr][c]) > std::fabs(m[piv][c])) piv = rr;
        std::swap(m[c], m[piv]);
        for (int rr = 0; rr < 3; ++rr) {
            if (rr == c) continue;
            double f = m[rr][c] / m[c][c];
            for (int cc = c; cc < 4; ++cc) m[rr][cc] -= f * m[c][cc];
        }
    }
    double slope = m[0][3] / m[0][0];
    fit.prefactor_exponent = m[1][3] / m[1][1];
    double intercept = m[2][3] / m[2][2];
    fit.distance_estimate = std::max(-slope / 2.0, 0.0);

    double ssw = 0.0, sw = 0.0;
    for (const auto* s : usable) {
        double ttilde = std::pow(s->tau, 0.5 * alpha0);
        double pred = slope * ttilde + fit.prefactor_exponent * std::log(s->tau) + intercept;
        double w = 1.0 / std::max(s->solver_residual, 1e-14);
        double r = s->indicator.log_abs() - pred;
        ssw += w * r * r;
        sw += w;
    }
    fit.fit_residual = std::sqrt(ssw / sw);

    // sign over the upper half of the usable samples
    std::size_t half = usable.size() / 2;
    double sign = usable.back()->indicator.sign();
    fit.sign_consistent = true;
    for (std::size_t i = half; i < usable.size(); ++i)
        if (usable[i]->indicator.sign() != sign) fit.sign_consistent = false;
    fit.jump_sign = sign > 0 ? JumpSign::positive : JumpSign::negative;

    // smallest sampled tau after which the sign never flips again
    fit.tau0_empirical = usable.back()->tau;
    for (std::size_t i = usable.size(); i-- > 0;) {
        if (usable[i]->indicator.sign() != sign) break;
        fit.tau0_empirical = usable[i]->tau;
    }
    return fit;
}

ThresholdVerdict threshold_test(const SweepResult& sweep, const SweepFit& fit, double T) {
    if (fit.usable_samples < 4)
        throw NumericalError("threshold_test: no usable distance fit available");
    double threshold = 2.0 * fit.distance_estimate;
    if (threshold > 0.0 && std::fabs(T - threshold) < 0.05 * threshold)
        return ThresholdVerdict::indeterminate_near_threshold;

    // trend of log|exp(ttilde T) I| over the top half of the usable sweep
    const auto& samples = sweep.samples;
    double alpha0 = sweep.config.alpha0;
    std::vector<std::pair<double, double>> pts;  // (ttilde, scaled log)
    double sign = 0.0;
    for (const auto& s : samples) {
        if (!s.ok || s.indicator.is_zero()) continue;
        double ttilde = std::pow(s.tau, 0.5 * alpha0);
        pts.emplace_back(ttilde, T * ttilde + s.indicator.log_abs());
        sign = s.indicator.sign();
    }
    std::size_t half = pts.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = half; i < pts.size(); ++i) {
        sx += pts[i].first;
        sy += pts[i].second;
        sxx += pts[i].first * pts[i].first;
        sxy += pts[i].first * pts[i].second;
        ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (slope < 0.0) return ThresholdVerdict::tends_to_zero;
    return sign > 0.0 ? ThresholdVerdict::tends_to_plus_inf
                      : ThresholdVerdict::tends_to_minus_inf;
}

std::string to_string(JumpSign s) {
    switch (s) {
        case JumpSign::positive: return "positive";
        case JumpSign::negative: return "negative";
        default: return "none";
    }
}

std::string to_string(ThresholdVerdict v) {
    switch (v) {
        case ThresholdVerdict::tends_to_zero: return "tends_to_zero";
        case ThresholdVerdict::tends_to_plus_inf: return "tends_to_plus_inf";
        case ThresholdVerdict::tends_to_minus_inf: return "tends_to_minus_inf";
        default: return "indeterminate_near_threshold";
    }
}

}  // namespace fde
