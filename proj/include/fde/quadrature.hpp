#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "fde/errors.hpp"

namespace fde {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration on
/// the Legendre polynomial.  Deterministic; cached per order by the caller
/// if needed.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Adaptive Gauss(7)-Kronrod(15) integration of f on [a,b].
/// abs_tol is interpreted against the accumulated integral magnitude
/// (relative once the result is nonzero).
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, int max_subdiv = 2000);

/// Fixed-order composite Gauss panels (for smooth or mildly oscillatory
/// integrands where the panel width is chosen from the oscillation rate).
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int order);

}  // namespace fde
