#include "confnet/linkmodels.hpp"

#include "confnet/errors.hpp"
#include "confnet/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

namespace confnet {

namespace sf = specfun;

namespace {

void check_distance(double r) {
    if (!std::isfinite(r) || r < 0.0) {
        throw DomainError("pair_connectedness: distance must be finite and >= 0");
    }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

void PathLossParams::validate() const {
    if (!std::isfinite(beta) || beta <= 0.0) throw DomainError("PathLossParams: beta must be > 0");
    if (!std::isfinite(eta) || eta < 2.0) throw DomainError("PathLossParams: eta must be finite and >= 2");
    if (dim < 1 || dim > 3) throw DomainError("PathLossParams: dim must be 1, 2 or 3");
}

double PathLossParams::scaled_distance(double r) const { return beta * std::pow(r, eta); }

ConnectionModel::ConnectionModel(LinkKind k, PathLossParams p) : kind_(k), params_(p) {
    params_.validate();
}

ConnectionModel ConnectionModel::siso(PathLossParams p) { return {Siso{}, p}; }

ConnectionModel ConnectionModel::simo_miso(int m, PathLossParams p) {
    if (m < 1) throw DomainError("SimoMiso: m must be >= 1");
    return {SimoMiso{m}, p};
}

ConnectionModel ConnectionModel::mimo(int n_t, int n_r, PathLossParams p) {
    if (n_t < 1 || n_r < 1) throw DomainError("Mimo: antenna counts must be >= 1");
    Mimo k{n_t, n_r};
    if (k.m() != 2) {
        throw CapabilityError("Mimo: only min(n_t, n_r) = 2 is supported (got " +
                              std::to_string(k.m()) + ")");
    }
    return {k, p};
}

ConnectionModel ConnectionModel::unit_disk(double radius, PathLossParams p,
                                           std::optional<double> plateau) {
    if (!std::isfinite(radius) || radius <= 0.0) throw DomainError("UnitDisk: radius must be > 0");
    if (plateau && !(*plateau >= 0.0 && *plateau <= 1.0)) {
        throw DomainError("UnitDisk: plateau must lie in [0, 1]");
    }
    return {UnitDisk{radius, plateau}, p};
}

ConnectionModel ConnectionModel::with_params(PathLossParams p) const { return {kind_, p}; }

std::string ConnectionModel::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Siso>) {
                os << "siso";
            } else if constexpr (std::is_same_v<T, SimoMiso>) {
                os << "simo(m=" << k.m << ")";
            } else if constexpr (std::is_same_v<T, Mimo>) {
                os << "mimo(" << k.n_t << "x" << k.n_r << ")";
            } else {
                os << "unitdisk(r=" << k.radius << ")";
            }
        },
        kind_);
    return os.str();
}

int ConnectionModel::diversity() const {
    return std::visit(
        [](const auto& k) -> int {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Siso>) {
                return 1;
            } else if constexpr (std::is_same_v<T, SimoMiso>) {
                return k.m;
            } else if constexpr (std::is_same_v<T, Mimo>) {
                return k.n();
            } else {
                throw CapabilityError("diversity: undefined for the unit-disk model");
            }
        },
        kind_);
}

double mimo_m2_of_scaled(int n, double x) {
    if (n < 2) throw DomainError("mimo: n must be >= 2");
    const double nn = static_cast<double>(n);
    if (x <= nn) {
        const double p_lo = sf::regularized_lower_gamma(nn - 1.0, x);
        const double p_mid = sf::regularized_lower_gamma(nn, x);
        const double p_hi = sf::regularized_lower_gamma(nn + 1.0, x);
        return clamp01(1.0 - nn * p_lo * p_hi + (nn - 1.0) * p_mid * p_mid);
    }
    // Same expression with P = 1 - Q and the recurrences
    // Q(n+1) = Q(n) + t_n, Q(n-1) = Q(n) - t_{n-1} folded in, so the O(1)
    // terms cancel symbolically instead of numerically in the tail:
    //   H = 2Q - Q^2 + x^{2n-1} e^{-2x} / Gamma(n)^2 + (1 - Q)(x - n) x^{n-1} e^{-x} / Gamma(n)
    const double q = sf::regularized_upper_gamma(nn, x);
    const double t = std::exp((nn - 1.0) * std::log(x) - x - sf::log_gamma(nn));  // x^{n-1}e^{-x}/Gamma(n)
    return clamp01(2.0 * q - q * q + x * t * t + (1.0 - q) * (x - nn) * t);
}

double pair_connectedness(const ConnectionModel& model, double r) {
    check_distance(r);
    const PathLossParams& p = model.params();
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Siso>) {
                return std::exp(-p.scaled_distance(r));
            } else if constexpr (std::is_same_v<T, SimoMiso>) {
                if (k.m == 1) return std::exp(-p.scaled_distance(r));
                return sf::regularized_upper_gamma(k.m, p.scaled_distance(r));
            } else if constexpr (std::is_same_v<T, Mimo>) {
                return mimo_m2_of_scaled(k.n(), p.scaled_distance(r));
            } else {
                if (r < k.radius) return 1.0;
                if (r > k.radius) return 0.0;
                return k.plateau.value_or(std::exp(-p.beta));
            }
        },
        model.kind());
}

double pair_connectedness_mimo_det(int n_t, int n_r, const PathLossParams& params, double r) {
    params.validate();
    check_distance(r);
    if (n_t < 1 || n_r < 1) throw DomainError("mimo_det: antenna counts must be >= 1");
    const int m = std::min(n_t, n_r);
    const int n = std::max(n_t, n_r);
    if (m > 2) throw CapabilityError("mimo_det: determinant form implemented for m <= 2 only");
    const double x = params.scaled_distance(r);

    // log kappa_{m,n} = -sum_i [ln Gamma(n-i+1) + ln Gamma(m-i+1)]
    double log_kappa = 0.0;
    for (int i = 1; i <= m; ++i) {
        log_kappa -= sf::log_gamma(n - i + 1) + sf::log_gamma(m - i + 1);
    }
    // Entry (i, j) = gamma(s_ij, x), s_ij = n - m + i + j - 1, stored as
    // (ln Gamma(s_ij), P(s_ij, x)) so the products stay in range.
    auto order = [&](int i, int j) { return static_cast<double>(n - m + i + j - 1); };
    auto log_g = [&](int i, int j) { return sf::log_gamma(order(i, j)); };
    auto reg_p = [&](int i, int j) { return sf::regularized_lower_gamma(order(i, j), x); };

    double outage = 0.0;
    if (m == 1) {
        outage = std::exp(log_kappa + log_g(1, 1)) * reg_p(1, 1);
    } else {
        const double diag = std::exp(log_kappa + log_g(1, 1) + log_g(2, 2)) * reg_p(1, 1) * reg_p(2, 2);
        const double anti = std::exp(log_kappa + log_g(1, 2) + log_g(2, 1)) * reg_p(1, 2) * reg_p(2, 1);
        outage = diag - anti;
    }
    return clamp01(1.0 - outage);
}

double mimo_gamma_form(int n, const PathLossParams& params, double r) {
    params.validate();
    check_distance(r);
    if (n < 2) throw DomainError("mimo_gamma_form: n must be >= 2");
    const double nn = static_cast<double>(n);
    const double x = params.scaled_distance(r);
    const double g_lo = sf::upper_incomplete_gamma(nn - 1.0, x);
    const double g_mid = sf::upper_incomplete_gamma(nn, x);
    const double g_hi = sf::upper_incomplete_gamma(nn + 1.0, x);
    const double gamma_lo = sf::gamma(nn - 1.0);
    const double gamma_mid = sf::gamma(nn);
    const double linear = (nn * g_lo - 2.0 * g_mid + g_hi / (nn - 1.0)) / gamma_lo;
    const double quadratic = (g_mid * g_mid - g_lo * g_hi) / (gamma_mid * gamma_lo);
    return clamp01(linear + quadratic);
}

}  // namespace confnet
