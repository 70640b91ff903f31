#pragma once

#include <cmath>
#include <limits>

namespace fde {

/// A real number stored as mantissa * exp(log_scale).  Quantities like
/// exp(tau_tilde * eta) reach exponents of several hundred across a sweep,
/// well past double range, so products and quotients operate on log_scale
/// and sums renormalize to the larger scale.
///
/// Normal form: mantissa in [1,e) or (-e,-1], or exactly 0 with log_scale 0.
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    static ScaledValue zero() { return {}; }

    /// Build from plain double.
    static ScaledValue of(double v) { return make(v, 0.0); }

    /// Build from mantissa-times-exp(log) parts; renormalizes.
    static ScaledValue make(double m, double log) {
        if (m == 0.0) return {};
        double k = std::floor(std::log(std::fabs(m)));
        ScaledValue r{m * std::exp(-k), log + k};
        // one corrective step against rounding at the [1,e) edges
        double am = std::fabs(r.mantissa);
        if (am >= M_E) {
            r.mantissa /= M_E;
            r.log_scale += 1.0;
        } else if (am < 1.0) {
            r.mantissa *= M_E;
            r.log_scale -= 1.0;
        }
        return r;
    }

    /// exp(log) with a chosen sign (+1/-1).
    static ScaledValue exp_of(double log, double sign = 1.0) { return {sign, log}; }

    bool is_zero() const { return mantissa == 0.0; }
    double sign() const { return mantissa == 0.0 ? 0.0 : (mantissa > 0.0 ? 1.0 : -1.0); }

    /// Natural log of the absolute value; -inf for zero.
    double log_abs() const {
        if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
        return log_scale + std::log(std::fabs(mantissa));
    }

    /// Collapse to double; may overflow to inf or underflow to 0.
    double to_double() const { return mantissa * std::exp(log_scale); }

    ScaledValue abs() const { return {std::fabs(mantissa), log_scale}; }
    ScaledValue operator-() const { return {-mantissa, log_scale}; }

    friend ScaledValue operator*(ScaledValue a, ScaledValue b) {
        if (a.is_zero() || b.is_zero()) return {};
        return make(a.mantissa * b.mantissa, a.log_scale + b.log_scale);
    }
    friend ScaledValue operator*(double s, ScaledValue v) { return of(s) * v; }
    friend ScaledValue operator/(ScaledValue a, ScaledValue b) {
        return make(a.mantissa / b.mantissa, a.log_scale - b.log_scale);
    }

    friend ScaledValue operator+(ScaledValue a, ScaledValue b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.log_scale < b.log_scale) std::swap(a, b);
        double d = b.log_scale - a.log_scale;  // <= 0
        if (d < -745.0) return a;              // b is below one ulp of a
        return make(a.mantissa + b.mantissa * std::exp(d), a.log_scale);
    }
    friend ScaledValue operator-(ScaledValue a, ScaledValue b) { return a + (-b); }

    /// Order by signed value.
    friend bool operator<(ScaledValue a, ScaledValue b) {
        double sa = a.sign(), sb = b.sign();
        if (sa != sb) return sa < sb;
        if (sa == 0.0) return false;
        double la = a.log_abs(), lb = b.log_abs();
        if (la != lb) return (la < lb) == (sa > 0.0);
        return false;
    }
    friend bool operator<=(ScaledValue a, ScaledValue b) { return !(b < a); }
};

}  // namespace fde
