#pragma once

// Homogeneous mass of connectivity M'_H = int_0^inf r^{d-1} H(r) dr: closed
// forms, the quadrature oracle, diversity scaling and the step-function
// approximation for MIMO links together with its error split.

#include "confnet/linkmodels.hpp"
#include "confnet/quadrature.hpp"

#include <span>
#include <vector>

namespace confnet {

enum class MassMethod { ClosedForm, Quadrature, StepApprox };

const char* to_string(MassMethod m);

struct MassResult {
    double value = 0.0;
    MassMethod method = MassMethod::ClosedForm;
    double est_abs_error = 0.0;  // quadrature only
};

/// Gamma(m + d/eta) / (beta^{d/eta} d Gamma(m)). m = 1 is the SISO mass.
MassResult mass_simo_closed(int m, const PathLossParams& params);

/// Hypergeometric closed form for 2 x n MIMO-MRC links (n >= 2):
///
///   (1 - s) Gamma(n-1+s) / (beta^s d Gamma(n-1))
///   + Gamma(2n+s) / (beta^s d Gamma(n)^2)
///     * [ F(n-1, 2n+s; n+1; -1) / n
///         - (n-1) / ((n+s)(n-1+s)) F(n-1+s, 2n+s; n+1+s; -1) ],   s = d/eta.
MassResult mass_mimo_closed(int n, const PathLossParams& params);

/// n = 2 specialization: (s^2 + s + 2 - 2^{-s}) Gamma(s) / (beta^s eta).
double mass_mimo_n2(const PathLossParams& params);

/// Dispatch to the closed form matching the model (unit disk: radius^d / d).
MassResult mass_closed(const ConnectionModel& model);

/// Upper integration limit used by mass_quadrature:
/// 2 (max(k, 1)/beta + 40/beta)^{1/eta}, k the diversity order.
double mass_cutoff_radius(const ConnectionModel& model);

/// Adaptive Gauss-Kronrod evaluation of the defining integral on [0, R_cut].
MassResult mass_quadrature(const ConnectionModel& model, const quad::QuadOptions& opts = {1e-15, 1e-12, 4000});

/// Leading large-k term k^{d/eta} / (beta^{d/eta} d), k = m (SIMO/MISO) or
/// n (MIMO). CapabilityError for SISO and unit disk.
double mass_scaling_leading(const ConnectionModel& model);

/// Step approximation (1/d)(n/beta)^{d/eta}; H replaced by the indicator of
/// beta r^eta < n.
MassResult mass_step_approx(int n, const PathLossParams& params);

struct StepError {
    double eps_minus = 0.0;  // int_0^{r_n} r^{d-1}(H - 1) dr <= 0
    double eps_plus = 0.0;   // int_{r_n}^inf r^{d-1} H dr    >= 0
    double total() const { return eps_minus + eps_plus; }
};

/// Both halves of the step-approximation error for 2 x n MIMO, by quadrature.
StepError step_error(int n, const PathLossParams& params);

/// Ordinary least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Slope of log |eps(n)| against log n over `n_values` (>= 4 increasing
/// values spanning a factor >= 8). DomainError on a degenerate fit.
double error_order_fit(std::span<const int> n_values, const PathLossParams& params);

/// Slope of log |M'_closed / leading - 1| against log k for the given model
/// family evaluated at each k (model's own diversity is ignored).
double scaling_correction_slope(const ConnectionModel& family, std::span<const int> k_values);

}  // namespace confnet
