#include "confnet/specfun.hpp"

#include "confnet/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace confnet::specfun {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoef = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

// ln(n!) for n = 0..170, accumulated once in long double.
const std::array<double, 171>& log_factorials() {
    static const std::array<double, 171> table = [] {
        std::array<double, 171> t{};
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int n = 1; n < 171; ++n) {
            acc += std::log(static_cast<long double>(n));
            t[n] = static_cast<double>(acc);
        }
        return t;
    }();
    return table;
}

// Lanczos sum for ln Gamma(z + 1), valid for z >= -0.5.
double lanczos_log_gamma_1p(double z) {
    double sum = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
        sum += kLanczosCoef[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

void check_gamma_args(double a, double x, const char* who) {
    if (!std::isfinite(a) || !std::isfinite(x) || a <= 0.0 || x < 0.0) {
        throw DomainError(std::string(who) + ": requires finite a > 0 and x >= 0 (a=" +
                          std::to_string(a) + ", x=" + std::to_string(x) + ")");
    }
}

// Sum_{k>=0} x^k / ((a+1)...(a+k)); multiply by the prefactor to get P.
double lower_series(double a, double x, const SpecFunConfig& cfg) {
    double term = 1.0;
    double sum = 1.0;
    double ap = a;
    for (int k = 1; k <= cfg.max_iter; ++k) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) <= std::abs(sum) * cfg.rel_tol * 0.1) return sum;
    }
    throw ConvergenceError("regularized_lower_gamma: series did not converge");
}

// Continued fraction for Q(a, x) without its x^a e^{-x} / Gamma(a) prefactor.
double upper_continued_fraction(double a, double x, const SpecFunConfig& cfg) {
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= cfg.max_iter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) <= cfg.rel_tol * 0.1) return h;
    }
    throw ConvergenceError("regularized_upper_gamma: continued fraction did not converge");
}

struct PQ {
    double p;
    double q;
};

PQ incomplete_gamma_pair(double a, double x, const SpecFunConfig& cfg) {
    cfg.validate();
    if (x == 0.0) return {0.0, 1.0};
    if (x < a + 1.0) {
        const double p = std::min(1.0, gamma_series_prefactor(a, x) * lower_series(a, x, cfg));
        return {p, 1.0 - p};
    }
    const double log_pref = a * std::log(x) - x - log_gamma(a);
    const double q = std::min(1.0, std::exp(log_pref) * upper_continued_fraction(a, x, cfg));
    return {1.0 - q, q};
}

bool is_nonpositive_integer(double v) { return v <= 0.0 && std::floor(v) == v; }

// Hypergeometric series at w in [0, 1/2]; geometric convergence once k is
// past the parameter scale.
double hyp_series(double a, double b, double c, double w, const SpecFunConfig& cfg) {
    double term = 1.0;
    double sum = 1.0;
    if (w == 0.0) return sum;
    for (int k = 0; k < cfg.max_iter; ++k) {
        const double kk = static_cast<double>(k);
        const double ratio = (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * w;
        term *= ratio;
        sum += term;
        if (term == 0.0) return sum;  // terminating series
        // Tail bound: once |ratio| < 0.9 the remainder is below 10 |term|.
        const double kn = kk + 1.0;
        const double next_ratio = std::abs((a + kn) * (b + kn) / ((c + kn) * (kn + 1.0)) * w);
        if (next_ratio < 0.9 && std::abs(term) <= std::abs(sum) * cfg.rel_tol * 0.1) return sum;
    }
    throw ConvergenceError("gauss_2f1: series did not converge within max_iter terms");
}

// Rough count of sign flips in the series generated by (p)_k (q)_k / (c)_k.
double sign_flip_score(double p, double q, double c) {
    auto flips = [](double v) { return v < 0.0 ? std::ceil(-v) : 0.0; };
    return flips(p) + flips(q) + flips(c);
}

}  // namespace

void SpecFunConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) {
        throw DomainError("SpecFunConfig: rel_tol must lie in (0, 1e-3]");
    }
    if (max_iter < 100) throw DomainError("SpecFunConfig: max_iter must be >= 100");
}

double log_gamma(double a) {
    if (!std::isfinite(a) || a <= 0.0) {
        throw DomainError("log_gamma: requires finite a > 0 (a=" + std::to_string(a) + ")");
    }
    if (a <= 171.0 && std::floor(a) == a) return log_factorials()[static_cast<std::size_t>(a) - 1];
    if (a < 0.5) return lanczos_log_gamma_1p(a) - std::log(a);
    return lanczos_log_gamma_1p(a - 1.0);
}

double gamma(double a) {
    const double lg = log_gamma(a);
    if (lg > std::log(std::numeric_limits<double>::max())) {
        throw std::overflow_error("gamma: Gamma(" + std::to_string(a) + ") overflows double");
    }
    return std::exp(lg);
}

double gamma_series_prefactor(double a, double x) {
    if (x == 0.0) return 0.0;
    return std::exp(a * std::log(x) - x - log_gamma(a + 1.0));
}

double regularized_lower_gamma(double a, double x, const SpecFunConfig& cfg) {
    check_gamma_args(a, x, "regularized_lower_gamma");
    return incomplete_gamma_pair(a, x, cfg).p;
}

double regularized_upper_gamma(double a, double x, const SpecFunConfig& cfg) {
    check_gamma_args(a, x, "regularized_upper_gamma");
    return incomplete_gamma_pair(a, x, cfg).q;
}

double lower_incomplete_gamma(double a, double x, const SpecFunConfig& cfg) {
    check_gamma_args(a, x, "lower_incomplete_gamma");
    return gamma(a) * incomplete_gamma_pair(a, x, cfg).p;
}

double upper_incomplete_gamma(double a, double x, const SpecFunConfig& cfg) {
    check_gamma_args(a, x, "upper_incomplete_gamma");
    const double q = incomplete_gamma_pair(a, x, cfg).q;
    if (q == 0.0) return 0.0;
    const double lg = log_gamma(a) + std::log(q);
    if (lg > std::log(std::numeric_limits<double>::max())) {
        throw std::overflow_error("upper_incomplete_gamma: result overflows double");
    }
    return std::exp(lg);
}

double gauss_2f1(double a, double b, double c, double z, const SpecFunConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
        throw DomainError("gauss_2f1: non-finite argument");
    }
    if (is_nonpositive_integer(c)) throw DomainError("gauss_2f1: c must not be a non-positive integer");
    if (z < -1.0 || z > 0.0) throw DomainError("gauss_2f1: z must lie in [-1, 0]");
    if (z == 0.0) return 1.0;

    const double w = z / (z - 1.0);
    const double log_one_minus_z = std::log1p(-z);
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; w) = (1-z)^{-b} F(c-a, b; c; w).
    if (sign_flip_score(a, c - b, c) <= sign_flip_score(c - a, b, c)) {
        return std::exp(-a * log_one_minus_z) * hyp_series(a, c - b, c, w, cfg);
    }
    return std::exp(-b * log_one_minus_z) * hyp_series(c - a, b, c, w, cfg);
}

}  // namespace confnet::specfun
