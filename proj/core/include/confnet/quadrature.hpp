#pragma once

#include <functional>
#include <span>

namespace confnet::quad {

struct QuadOptions {
    double abs_tol = 1e-15;
    double rel_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
};

/// Globally adaptive 7-point Gauss / 15-point Kronrod quadrature on [lo, hi].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate falls below max(abs_tol, rel_tol * |value|). Throws
/// ConvergenceError when max_subdivisions is exhausted first.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadOptions& opts = {});

/// Same, with the integrand known to have kinks or jumps at `breakpoints`
/// (points outside [lo, hi] are ignored). Each piece starts as its own
/// subinterval so discontinuities never fall inside a Kronrod panel.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     std::span<const double> breakpoints, const QuadOptions& opts = {});

}  // namespace confnet::quad
