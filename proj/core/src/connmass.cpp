#include "confnet/connmass.hpp"

#include "confnet/errors.hpp"
#include "confnet/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <variant>

namespace confnet {

namespace sf = specfun;

namespace {

double exponent_ratio(const PathLossParams& p) { return static_cast<double>(p.dim) / p.eta; }

// r^{d-1} with r^0 = 1 at r = 0.
double radial_weight(double r, int dim) {
    switch (dim) {
        case 1: return 1.0;
        case 2: return r;
        default: return r * r;
    }
}

double transition_radius(int k, const PathLossParams& p) {
    return std::pow(static_cast<double>(k) / p.beta, 1.0 / p.eta);
}

ConnectionModel rebuild_with_diversity(const ConnectionModel& family, int k) {
    return std::visit(
        [&](const auto& kind) -> ConnectionModel {
            using T = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<T, SimoMiso>) {
                return ConnectionModel::simo_miso(k, family.params());
            } else if constexpr (std::is_same_v<T, Mimo>) {
                return ConnectionModel::mimo(2, k, family.params());
            } else {
                throw CapabilityError("scaling law defined for SIMO/MISO and MIMO only");
            }
        },
        family.kind());
}

}  // namespace

const char* to_string(MassMethod m) {
    switch (m) {
        case MassMethod::ClosedForm: return "closed_form";
        case MassMethod::Quadrature: return "quadrature";
        case MassMethod::StepApprox: return "step_approx";
    }
    return "unknown";
}

MassResult mass_simo_closed(int m, const PathLossParams& params) {
    params.validate();
    if (m < 1) throw DomainError("mass_simo_closed: m must be >= 1");
    const double s = exponent_ratio(params);
    const double log_value = sf::log_gamma(m + s) - sf::log_gamma(m) - s * std::log(params.beta) -
                             std::log(static_cast<double>(params.dim));
    return {std::exp(log_value), MassMethod::ClosedForm, 0.0};
}

MassResult mass_mimo_closed(int n, const PathLossParams& params) {
    params.validate();
    if (n < 2) throw CapabilityError("mass_mimo_closed: requires n >= 2");
    const double s = exponent_ratio(params);
    const double nn = static_cast<double>(n);
    const double d = static_cast<double>(params.dim);
    const double beta_s = std::pow(params.beta, s);

    const double linear = (1.0 - s) * std::exp(sf::log_gamma(nn - 1.0 + s) - sf::log_gamma(nn - 1.0)) /
                          (beta_s * d);
    const double log_pref = sf::log_gamma(2.0 * nn + s) - 2.0 * sf::log_gamma(nn);
    const double f1 = sf::gauss_2f1(nn - 1.0, 2.0 * nn + s, nn + 1.0, -1.0);
    const double f2 = sf::gauss_2f1(nn - 1.0 + s, 2.0 * nn + s, nn + 1.0 + s, -1.0);
    const double bracket = f1 / nn - (nn - 1.0) / ((nn + s) * (nn - 1.0 + s)) * f2;
    const double quadratic = std::exp(log_pref) * bracket / (beta_s * d);
    return {linear + quadratic, MassMethod::ClosedForm, 0.0};
}

double mass_mimo_n2(const PathLossParams& params) {
    params.validate();
    const double s = exponent_ratio(params);
    return (s * s + s + 2.0 - std::pow(2.0, -s)) * sf::gamma(s) / (std::pow(params.beta, s) * params.eta);
}

MassResult mass_closed(const ConnectionModel& model) {
    const PathLossParams& p = model.params();
    return std::visit(
        [&](const auto& k) -> MassResult {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Siso>) {
                return mass_simo_closed(1, p);
            } else if constexpr (std::is_same_v<T, SimoMiso>) {
                return mass_simo_closed(k.m, p);
            } else if constexpr (std::is_same_v<T, Mimo>) {
                return mass_mimo_closed(k.n(), p);
            } else {
                return {std::pow(k.radius, p.dim) / p.dim, MassMethod::ClosedForm, 0.0};
            }
        },
        model.kind());
}

double mass_cutoff_radius(const ConnectionModel& model) {
    const PathLossParams& p = model.params();
    if (const auto* disk = std::get_if<UnitDisk>(&model.kind())) return disk->radius;
    const double k = std::max(1, model.diversity());
    return 2.0 * std::pow(k / p.beta + 40.0 / p.beta, 1.0 / p.eta);
}

MassResult mass_quadrature(const ConnectionModel& model, const quad::QuadOptions& opts) {
    const PathLossParams& p = model.params();
    auto integrand = [&](double r) { return radial_weight(r, p.dim) * pair_connectedness(model, r); };

    if (const auto* disk = std::get_if<UnitDisk>(&model.kind())) {
        auto res = quad::integrate(integrand, 0.0, disk->radius, opts);
        return {res.value, MassMethod::Quadrature, res.abs_error};
    }

    const int k = model.diversity();
    const double r_cut = mass_cutoff_radius(model);
    const double r_t = transition_radius(k, p);
    // Transition at beta r^eta = k, with extra cuts one "width" either side.
    const double width = std::sqrt(static_cast<double>(k)) + 1.0;
    const double r_lo = transition_radius(std::max(1, static_cast<int>(k - 3.0 * width)), p);
    const double r_hi = std::pow((k + 3.0 * width) / p.beta, 1.0 / p.eta);
    const double cuts[] = {0.5 * r_t, r_lo, r_t, r_hi, 2.0 * r_t};
    auto res = quad::integrate(integrand, 0.0, r_cut, cuts, opts);

    // Certify the truncation: the integrand must be negligible at R_cut.
    const double tail = radial_weight(r_cut, p.dim) * pair_connectedness(model, r_cut) * r_cut;
    if (tail > 1e-16 * std::abs(res.value)) {
        throw ConvergenceError("mass_quadrature: integrand tail not negligible at R_cut");
    }
    return {res.value, MassMethod::Quadrature, res.abs_error};
}

double mass_scaling_leading(const ConnectionModel& model) {
    const PathLossParams& p = model.params();
    if (std::holds_alternative<Siso>(model.kind()) || std::holds_alternative<UnitDisk>(model.kind())) {
        throw CapabilityError("mass_scaling_leading: defined for SIMO/MISO and MIMO only");
    }
    const double s = exponent_ratio(p);
    const double k = model.diversity();
    return std::pow(k / p.beta, s) / p.dim;
}

MassResult mass_step_approx(int n, const PathLossParams& params) {
    params.validate();
    if (n < 2) throw DomainError("mass_step_approx: n must be >= 2");
    const double s = exponent_ratio(params);
    return {std::pow(n / params.beta, s) / params.dim, MassMethod::StepApprox, 0.0};
}

StepError step_error(int n, const PathLossParams& params) {
    params.validate();
    if (n < 2) throw DomainError("step_error: n must be >= 2");
    const ConnectionModel model = ConnectionModel::mimo(2, n, params);
    const int d = params.dim;
    const double r_t = transition_radius(n, params);
    const double width = std::sqrt(static_cast<double>(n));
    const quad::QuadOptions opts{1e-15, 1e-12, 4000};

    auto below = [&](double r) { return radial_weight(r, d) * (pair_connectedness(model, r) - 1.0); };
    auto above = [&](double r) { return radial_weight(r, d) * pair_connectedness(model, r); };

    const double x_lo = std::max(0.0, n - 6.0 * width);
    const double cut_lo[] = {std::pow(x_lo / params.beta, 1.0 / params.eta),
                             std::pow(std::max(0.0, n - 2.0 * width) / params.beta, 1.0 / params.eta)};
    const double cut_hi[] = {std::pow((n + 2.0 * width) / params.beta, 1.0 / params.eta),
                             std::pow((n + 6.0 * width) / params.beta, 1.0 / params.eta)};

    StepError out;
    out.eps_minus = quad::integrate(below, 0.0, r_t, cut_lo, opts).value;
    out.eps_plus = quad::integrate(above, r_t, mass_cutoff_radius(model), cut_hi, opts).value;
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need >= 2 paired samples");
    double mx = 0.0;
    double my = 0.0;
    const double count = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_slope: samples must be positive");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= count;
    my /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw DomainError("loglog_slope: x values are all equal");
    return sxy / sxx;
}

double error_order_fit(std::span<const int> n_values, const PathLossParams& params) {
    if (n_values.size() < 4) throw DomainError("error_order_fit: need at least 4 values of n");
    for (std::size_t i = 1; i < n_values.size(); ++i) {
        if (n_values[i] <= n_values[i - 1]) throw DomainError("error_order_fit: n values must increase");
    }
    if (n_values.back() < 8 * n_values.front()) {
        throw DomainError("error_order_fit: n values must span at least a factor of 8");
    }
    std::vector<double> ns;
    std::vector<double> eps;
    for (int n : n_values) {
        const double e = step_error(n, params).total();
        if (e == 0.0) throw DomainError("error_order_fit: eps(n) vanished; fit is degenerate");
        ns.push_back(n);
        eps.push_back(std::abs(e));
    }
    return loglog_slope(ns, eps);
}

double scaling_correction_slope(const ConnectionModel& family, std::span<const int> k_values) {
    std::vector<double> ks;
    std::vector<double> gaps;
    for (int k : k_values) {
        const ConnectionModel model = rebuild_with_diversity(family, k);
        const double gap = std::abs(mass_closed(model).value / mass_scaling_leading(model) - 1.0);
        if (gap < 1e-12) throw DomainError("scaling_correction_slope: correction vanishes identically");
        ks.push_back(k);
        gaps.push_back(gap);
    }
    return loglog_slope(ks, gaps);
}

}  // namespace confnet
