#pragma once

// Special functions used by the link models and the mass of connectivity:
// log-gamma, incomplete gamma (regularized and not), and the Gauss
// hypergeometric function on z in [-1, 0]. Everything is double precision;
// gamma prefactors are carried in log space so large arguments do not
// overflow before the final result is formed.

namespace confnet::specfun {

struct SpecFunConfig {
    double rel_tol = 1e-14;  // in (0, 1e-3]
    int max_iter = 10'000;   // >= 100

    // Throws DomainError if the fields violate their ranges.
    void validate() const;
};

/// ln Gamma(a) for a > 0. Lanczos approximation (g = 607/128, 15 terms);
/// integer arguments up to 171 are answered from an exact factorial table.
double log_gamma(double a);

/// Gamma(a) = exp(log_gamma(a)); throws std::overflow_error past ~171.6.
double gamma(double a);

/// P(a, x) = gamma(a, x) / Gamma(a).
///
/// Power series for x < a + 1, modified Lentz continued fraction for the
/// complement otherwise. Throws DomainError for a <= 0, x < 0 or non-finite
/// input, ConvergenceError if max_iter is exhausted.
double regularized_lower_gamma(double a, double x, const SpecFunConfig& cfg = {});

/// Q(a, x) = 1 - P(a, x), evaluated directly (no cancellation for large x).
double regularized_upper_gamma(double a, double x, const SpecFunConfig& cfg = {});

/// Unregularized lower incomplete gamma gamma(a, x) = Gamma(a) P(a, x).
double lower_incomplete_gamma(double a, double x, const SpecFunConfig& cfg = {});

/// Unregularized upper incomplete gamma Gamma(a, x) = Gamma(a) Q(a, x).
/// Throws std::overflow_error when Gamma(a) is not representable.
double upper_incomplete_gamma(double a, double x, const SpecFunConfig& cfg = {});

/// x^a e^{-x} / Gamma(a+1), the series head shared by both branches above.
/// Computed in log space.
double gamma_series_prefactor(double a, double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for z in [-1, 0].
///
/// Uses a Pfaff transformation to map z onto w = z/(z-1) in [0, 1/2], where
/// the hypergeometric series converges geometrically. Of the two Pfaff forms
/// the one whose transformed series has the fewest sign changes is summed.
/// Throws DomainError when c is a non-positive integer or z is outside
/// [-1, 0]; ConvergenceError if the series does not settle in max_iter terms.
double gauss_2f1(double a, double b, double c, double z, const SpecFunConfig& cfg = {});

}  // namespace confnet::specfun
