#include "checks.hpp"

#include "table.hpp"

#include "confnet/connmass.hpp"
#include "confnet/geometry.hpp"
#include "confnet/linkmodels.hpp"
#include "confnet/mc_sim.hpp"
#include "confnet/pfc_analytic.hpp"
#include "confnet/rng.hpp"
#include "confnet/union_find.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>

namespace confnet::cli {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

CheckResult verdict(std::string name, double metric, double tol, std::string detail) {
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    return {std::move(name), metric <= tol, metric, tol, std::move(detail)};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

CheckResult cross_form_h(bool perturb) {
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        for (double beta : {0.5, 1.0, 2.0}) {
            for (double eta : {2.0, 3.0, 4.0}) {
                const PathLossParams p{beta, eta, 3};
                for (int i = 0; i < 50; ++i) {
                    const double r = 5.0 * i / 49.0;
                    const double det = pair_connectedness_mimo_det(2, n, p, r);
                    const double expanded = mimo_m2_of_scaled(n, p.scaled_distance(r)) + (perturb ? 1e-6 : 0.0);
                    const double gamma = mimo_gamma_form(n, p, r);
                    worst = std::max({worst, std::abs(det - expanded), std::abs(det - gamma),
                                      std::abs(expanded - gamma)});
                }
            }
        }
    }
    return verdict("cross-form-h", worst, 1e-10, "max |dH| over n 2..8, beta, eta, 50 radii");
}

CheckResult mass_closed_vs_quadrature(bool perturb) {
    double worst = 0.0;
    std::string where;
    const double scale = perturb ? 1.001 : 1.0;
    for (int d = 1; d <= 3; ++d) {
        for (double eta : {2.0, 3.0, 4.0}) {
            for (double beta : {0.5, 1.0, 2.0}) {
                const PathLossParams p{beta, eta, d};
                std::vector<ConnectionModel> models;
                for (int m = 1; m <= 8; ++m) models.push_back(ConnectionModel::simo_miso(m, p));
                for (int n = 2; n <= 8; ++n) models.push_back(ConnectionModel::mimo(2, n, p));
                for (const auto& model : models) {
                    const double e = rel(scale * mass_closed(model).value, mass_quadrature(model).value);
                    if (e > worst) {
                        worst = e;
                        where = model.describe() + " d=" + std::to_string(d) + " eta=" + format_double(eta) +
                                " beta=" + format_double(beta);
                    }
                }
                const double n2 = rel(scale * mass_mimo_n2(p), mass_quadrature(ConnectionModel::mimo(2, 2, p)).value);
                if (n2 > worst) {
                    worst = n2;
                    where = "mimo n=2 specialization d=" + std::to_string(d);
                }
            }
        }
    }
    return verdict("mass-closed-vs-quadrature", worst, 1e-6, "worst at " + where);
}

CheckResult exponent_rates(bool perturb) {
    const double mass = mass_quadrature(ConnectionModel::mimo(2, 2, {1.0, 2.0, 3})).value;
    const double c = perturb ? 23.0 + kSqrt2 : 23.0 - kSqrt2;
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 2.0}) {
        const double b = std::pow(beta, -1.5);
        const ConnectionModel model = ConnectionModel::mimo(2, 2, {beta, 2.0, 3});
        for (double theta : {kPi / 2.0, 3.0 * kPi / 4.0, kPi / 3.0}) {
            worst = std::max(worst, rel(c * std::sqrt(kPi) * theta / 16.0 * b, theta * mass * b));
            worst = std::max(worst, rel(c * std::sqrt(kPi) * theta / 8.0 * b, 2.0 * theta * mass * b));
        }
        worst = std::max(worst, rel(c * std::pow(kPi, 1.5) / 8.0 * b, 2.0 * kPi * mass * b));
        worst = std::max(worst, rel(c * std::pow(kPi, 1.5) / 4.0 * b, 4.0 * kPi * mass * b));
        // The assembled ledger must use the same rates.
        for (const auto& f : feature_ledger(house_prism(7.0), model)) {
            worst = std::max(worst, rel(f.exponent_rate, f.feature.solid_angle * mass * b));
        }
    }
    return verdict("exponent-rates", worst, 1e-10, "corner/edge/face/bulk rates vs omega M' (n=2, d=3, eta=2)");
}

CheckResult scaling_slopes(bool perturb) {
    std::vector<int> ks(61);
    std::iota(ks.begin(), ks.end(), 4);
    const double shift = perturb ? 0.5 : 0.0;
    double worst = 0.0;
    std::string detail;
    for (double eta : {2.0, 4.0}) {
        const double slope = scaling_correction_slope(ConnectionModel::simo_miso(4, {1.0, eta, 3}), ks);
        worst = std::max(worst, std::abs(slope - (-1.0 + shift)));
        detail += "simo eta=" + format_double(eta) + " slope=" + format_double(slope) + "; ";
    }
    for (double eta : {2.0, 3.0, 4.0}) {
        const double slope = scaling_correction_slope(ConnectionModel::mimo(2, 4, {1.0, eta, 3}), ks);
        worst = std::max(worst, std::abs(slope - (-0.5 + shift)));
        detail += "mimo eta=" + format_double(eta) + " slope=" + format_double(slope) + "; ";
    }
    return verdict("scaling-slopes", worst, 0.15, detail);
}

CheckResult error_order(bool perturb) {
    const std::vector<int> ns = {8, 16, 32, 64, 128, 256};
    double worst = 0.0;
    std::string detail;
    for (auto [d, eta] : {std::pair{3, 2.0}, std::pair{3, 3.0}, std::pair{2, 4.0}}) {
        const double slope = error_order_fit(ns, {1.0, eta, d});
        const double expected = d / eta - 0.5 + (perturb ? 1.0 : 0.0);
        worst = std::max(worst, std::abs(slope - expected));
        detail += "d=" + std::to_string(d) + " eta=" + format_double(eta) + " slope=" + format_double(slope) + "; ";
    }
    return verdict("error-order", worst, 0.2, detail);
}

CheckResult house_coefficients(bool perturb) {
    const double pi3 = perturb ? kPi * kPi : kPi * kPi * kPi;
    const double pi2 = kPi * kPi;
    const double c = 23.0 - kSqrt2;
    const double sp = std::sqrt(kPi);
    struct Literal {
        double prefactor;
        double rate;
    };
    const std::map<std::string, Literal> literals = {
        {"C1", {6.0 * 512.0 / (343.0 * pi3), c * sp * (kPi / 2.0) / 16.0}},
        {"C2", {4.0 * 1024.0 * kSqrt2 / (1029.0 * pi3), c * sp * (3.0 * kPi / 4.0) / 16.0}},
        {"E1", {(9.0 + 2.0 * kSqrt2) * 16.0 * 7.0 / (49.0 * pi2), c * sp * (kPi / 2.0) / 8.0}},
        {"E2", {2.0 * 16.0 * kSqrt2 * 7.0 / (49.0 * pi2), c * sp * (3.0 * kPi / 4.0) / 8.0}},
        {"F", {2.0 / (7.0 * kPi) * (11.0 + 2.0 * kSqrt2) / 2.0 * 49.0, c * std::pow(kPi, 1.5) / 8.0}},
        {"U", {428.75, c * std::pow(kPi, 1.5) / 4.0}},
    };
    const auto ledger = feature_ledger(house_prism(7.0), ConnectionModel::mimo(2, 2, {1.0, 2.0, 3}));
    double worst = ledger.size() == literals.size() ? 0.0 : 1.0;
    for (const auto& f : ledger) {
        const auto it = literals.find(f.label);
        if (it == literals.end()) return verdict("house-coefficients", 1.0, 1e-12, "unexpected feature " + f.label);
        worst = std::max({worst, rel(f.weight() * f.geometric_factor, it->second.prefactor),
                          rel(f.exponent_rate, it->second.rate)});
    }
    return verdict("house-coefficients", worst, 1e-12, "C1 C2 E1 E2 F U prefactors and rates at beta=1, L=7");
}

bool bfs_connected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    if (n == 0) return false;
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        const std::size_t v = q.front();
        q.pop();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                q.push(w);
            }
        }
    }
    return count == n;
}

CheckResult union_find_bfs(bool perturb, std::uint64_t seed) {
    std::size_t mismatches = 0;
    for (std::uint64_t g = 0; g < 500; ++g) {
        Engine eng(derive_seed(seed, g));
        const std::size_t n = 1 + eng() % 64;
        const double p = uniform01(eng) * 4.0 / static_cast<double>(n);
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (uniform01(eng) < p) edges.emplace_back(i, j);
            }
        }
        const bool uf = connectivity_check(n, edges).connected;
        if (perturb && !edges.empty()) edges.pop_back();
        if (uf != bfs_connected(n, edges)) ++mismatches;
    }
    return verdict("union-find-bfs", static_cast<double>(mismatches), 0.0, "500 random graphs, n <= 64");
}

std::vector<Vec3> random_points(std::size_t n, double side, Engine& eng) {
    std::vector<Vec3> pts(n);
    for (Vec3& v : pts) v = {side * uniform01(eng), side * uniform01(eng), side * uniform01(eng)};
    return pts;
}

double brute_force_connectivity(const std::vector<Vec3>& pts, const ConnectionModel& model) {
    const std::size_t n = pts.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<double> h;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
            h.push_back(pair_connectedness(model, distance(pts[i], pts[j])));
        }
    }
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        double prob = 1.0;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            if (mask >> e & 1U) {
                prob *= h[e];
                edges.push_back(pairs[e]);
            } else {
                prob *= 1.0 - h[e];
            }
        }
        if (n <= 1 || bfs_connected(n, edges)) total += prob;
    }
    return total;
}

CheckResult exact_oracle(bool perturb, std::uint64_t seed) {
    const ConnectionModel model = ConnectionModel::mimo(2, 2, {1.0, 2.0, 3});
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        Engine eng(derive_seed(seed, t));
        const auto pts = random_points(1 + eng() % 5, 3.0, eng);
        const double ref = brute_force_connectivity(pts, model) + (perturb ? 1e-3 : 0.0);
        worst = std::max(worst, std::abs(exact_connectivity_probability(pts, model) - ref));
    }
    return verdict("exact-oracle", worst, 1e-12, "200 instances, N <= 5, against edge-subset enumeration");
}

CheckResult exact_vs_resampling(bool perturb, std::uint64_t seed) {
    const ConnectionModel model = ConnectionModel::mimo(2, 2, {1.0, 2.0, 3});
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 10; ++t) {
        Engine eng(derive_seed(seed, t));
        const auto pts = random_points(2 + eng() % 9, 3.0, eng);
        const double exact = exact_connectivity_probability(pts, model) + (perturb ? 0.05 : 0.0);
        const std::size_t resamples = 20000;
        const McEstimate est = resample_links(pts, model, resamples, derive_seed(seed, 1000 + t));
        const double sigma = std::sqrt(std::max(exact * (1.0 - exact), 1e-12) / resamples);
        worst = std::max(worst, std::abs(est.p_fc_hat - exact) / sigma);
    }
    return verdict("exact-vs-resampling", worst, 4.0, "10 instances, N <= 10, 2e4 resamples; metric in sigmas");
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "cross-form-h",       "mass-closed-vs-quadrature", "exponent-rates", "scaling-slopes",
        "error-order",        "house-coefficients",        "union-find-bfs", "exact-oracle",
        "exact-vs-resampling"};
    return names;
}

bool is_check(const std::string& name) {
    const auto& n = check_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

CheckResult run_check(const std::string& name, bool perturb, std::uint64_t seed) {
    if (name == "cross-form-h") return cross_form_h(perturb);
    if (name == "mass-closed-vs-quadrature") return mass_closed_vs_quadrature(perturb);
    if (name == "exponent-rates") return exponent_rates(perturb);
    if (name == "scaling-slopes") return scaling_slopes(perturb);
    if (name == "error-order") return error_order(perturb);
    if (name == "house-coefficients") return house_coefficients(perturb);
    if (name == "union-find-bfs") return union_find_bfs(perturb, seed);
    if (name == "exact-oracle") return exact_oracle(perturb, seed);
    if (name == "exact-vs-resampling") return exact_vs_resampling(perturb, seed);
    throw std::invalid_argument("unknown check " + name);
}

}  // namespace confnet::cli
