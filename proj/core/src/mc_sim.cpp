#include "confnet/mc_sim.hpp"

#include "confnet/errors.hpp"
#include "confnet/union_find.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <variant>

namespace confnet {

LinkEvaluator::LinkEvaluator(const ConnectionModel& model) : model_(model) {
    const PathLossParams& p = model.params();
    beta_ = p.beta;
    eta_ = p.eta;
    if (std::holds_alternative<Siso>(model.kind())) {
        path_ = Path::Siso;
    } else if (const auto* s = std::get_if<SimoMiso>(&model.kind()); s && s->m == 1) {
        path_ = Path::Siso;
    } else if (const auto* m = std::get_if<Mimo>(&model.kind()); m && m->n_t == 2 && m->n_r == 2) {
        path_ = Path::Mimo22;
    } else if (const auto* d = std::get_if<UnitDisk>(&model.kind())) {
        path_ = Path::UnitDisk;
        disk_radius_ = d->radius;
        disk_plateau_ = d->plateau.value_or(std::exp(-p.beta));
    }
}

double LinkEvaluator::from_squared(double r2) const {
    switch (path_) {
        case Path::Siso: {
            const double x = eta_ == 2.0 ? beta_ * r2 : beta_ * std::pow(r2, 0.5 * eta_);
            return std::exp(-x);
        }
        case Path::Mimo22: {
            // 1 - 2 P(1,x) P(3,x) + P(2,x)^2 collapses to e^{-x}(x^2 + 2 - e^{-x}).
            const double x = eta_ == 2.0 ? beta_ * r2 : beta_ * std::pow(r2, 0.5 * eta_);
            const double e = std::exp(-x);
            return std::clamp(e * (x * x + 2.0 - e), 0.0, 1.0);
        }
        case Path::UnitDisk: {
            const double rr = disk_radius_ * disk_radius_;
            if (r2 < rr) return 1.0;
            if (r2 > rr) return 0.0;
            return disk_plateau_;
        }
        case Path::General: break;
    }
    return pair_connectedness(model_, std::sqrt(r2));
}

double LinkEvaluator::operator()(double r) const {
    if (path_ == Path::General) return pair_connectedness(model_, r);
    if (path_ == Path::UnitDisk) {
        if (r < disk_radius_) return 1.0;
        return r > disk_radius_ ? 0.0 : disk_plateau_;
    }
    return from_squared(r * r);
}

double LinkEvaluator::support_radius(double threshold, double r_max) const {
    if (path_ == Path::UnitDisk) return std::min(disk_radius_, r_max);
    if ((*this)(r_max) >= threshold) return r_max;
    double lo = 0.0;
    double hi = r_max;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * r_max; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((*this)(mid) < threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

McConfig::McConfig(ConnectionModel m, RightPrism p, std::size_t n, std::size_t t, std::uint64_t s)
    : model(std::move(m)), prism(std::move(p)), node_count(n), trials(t), seed(s) {}

McConfig McConfig::from_density(double rho, ConnectionModel model, RightPrism prism, std::size_t trials,
                                std::uint64_t seed) {
    if (!std::isfinite(rho) || rho < 0.0) throw DomainError("McConfig: density must be finite and >= 0");
    const auto n = static_cast<std::size_t>(std::llround(rho * prism.volume()));
    return {std::move(model), std::move(prism), n, trials, seed};
}

void McConfig::validate() const {
    if (trials < 1) throw DomainError("McConfig: trials must be >= 1");
    if (!(link_floor >= 0.0 && link_floor < 1e-3)) throw DomainError("McConfig: link_floor must lie in [0, 1e-3)");
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::clamp(std::min(center - half, p), 0.0, 1.0), std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

TrialOutcome realize_links(std::span<const Vec3> points, const LinkEvaluator& link, double cutoff_radius,
                           Engine& eng) {
    const std::size_t n = points.size();
    UnionFind uf(n);
    const double cut2 = cutoff_radius * cutoff_radius;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& a = points[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3& b = points[j];
            const double dx = a.x - b.x;
            const double dy = a.y - b.y;
            const double dz = a.z - b.z;
            const double r2 = dx * dx + dy * dy + dz * dz;
            if (r2 > cut2) continue;
            // A link inside one component cannot change the partition.
            if (uf.same(i, j)) continue;
            if (uniform01(eng) < link.from_squared(r2)) uf.unite(i, j);
        }
    }
    TrialOutcome out;
    out.connected = uf.components() <= 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (uf.size_of(i) == 1) ++out.isolated;
    }
    return out;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

namespace {

McEstimate summarize(std::size_t trials, std::size_t connected, std::size_t isolated_total,
                     std::size_t trials_with_isolated) {
    McEstimate est;
    est.trials = trials;
    est.connected = connected;
    est.p_fc_hat = static_cast<double>(connected) / static_cast<double>(trials);
    std::tie(est.ci_low, est.ci_high) = wilson_interval(connected, trials);
    est.mean_isolated = static_cast<double>(isolated_total) / static_cast<double>(trials);
    est.p_isolated_hat = static_cast<double>(trials_with_isolated) / static_cast<double>(trials);
    return est;
}

}  // namespace

McEstimate run_trials(const McConfig& config) {
    config.validate();
    const LinkEvaluator link(config.model);
    const double cutoff = link.support_radius(config.link_floor, config.prism.diameter() * (1.0 + 1e-12));

    std::atomic<std::size_t> connected{0};
    std::atomic<std::size_t> isolated_total{0};
    std::atomic<std::size_t> with_isolated{0};
    parallel_for(config.trials, config.threads, [&](std::size_t t) {
        Engine eng(derive_seed(config.seed, t));
        std::size_t n = config.node_count;
        if (config.poisson_nodes) {
            std::poisson_distribution<std::size_t> count(static_cast<double>(config.node_count));
            n = config.node_count == 0 ? 0 : count(eng);
        }
        const std::vector<Vec3> points = sample_uniform(config.prism, n, eng);
        const TrialOutcome out = realize_links(points, link, cutoff, eng);
        if (out.connected) ++connected;
        isolated_total += out.isolated;
        if (out.isolated > 0) ++with_isolated;
    });
    return summarize(config.trials, connected, isolated_total, with_isolated);
}

McEstimate resample_links(std::span<const Vec3> points, const ConnectionModel& model, std::size_t resamples,
                          std::uint64_t seed, unsigned threads) {
    if (resamples < 1) throw DomainError("resample_links: resamples must be >= 1");
    const LinkEvaluator link(model);
    double diameter = 0.0;
    for (const Vec3& a : points) {
        for (const Vec3& b : points) diameter = std::max(diameter, distance(a, b));
    }
    const double cutoff = diameter * (1.0 + 1e-12) + 1.0;  // no pruning: keep every pair

    std::atomic<std::size_t> connected{0};
    std::atomic<std::size_t> isolated_total{0};
    std::atomic<std::size_t> with_isolated{0};
    parallel_for(resamples, threads, [&](std::size_t t) {
        Engine eng(derive_seed(seed, t));
        const TrialOutcome out = realize_links(points, link, cutoff, eng);
        if (out.connected) ++connected;
        isolated_total += out.isolated;
        if (out.isolated > 0) ++with_isolated;
    });
    return summarize(resamples, connected, isolated_total, with_isolated);
}

double exact_connectivity_probability(std::span<const double> link_prob, std::size_t n) {
    if (n > 12) throw SizeError("exact_connectivity_probability: at most 12 nodes supported");
    if (link_prob.size() != n * n) throw DomainError("exact_connectivity_probability: matrix must be n x n");
    if (n <= 1) return 1.0;

    const std::size_t full = (std::size_t{1} << n) - 1;
    // miss[i][mask] = prod_{j in mask} (1 - H_ij)
    std::vector<std::vector<double>> miss(n, std::vector<double>(full + 1, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t mask = 1; mask <= full; ++mask) {
            const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
            miss[i][mask] = miss[i][mask & (mask - 1)] * (low == i ? 1.0 : 1.0 - link_prob[i * n + low]);
        }
    }

    std::vector<double> f(full + 1, 0.0);
    for (std::size_t s = 1; s <= full; ++s) {
        if ((s & (s - 1)) == 0) {
            f[s] = 1.0;
            continue;
        }
        const std::size_t anchor = s & (~s + 1);
        const std::size_t rest = s ^ anchor;
        double disconnected = 0.0;
        // T = anchor | u for every proper subset u of rest.
        for (std::size_t u = (rest - 1) & rest;; u = (u - 1) & rest) {
            const std::size_t t = anchor | u;
            const std::size_t outside = s ^ t;
            double cut = 1.0;
            for (std::size_t bits = t; bits != 0; bits &= bits - 1) {
                cut *= miss[static_cast<std::size_t>(__builtin_ctzll(bits))][outside];
            }
            disconnected += f[t] * cut;
            if (u == 0) break;
        }
        f[s] = 1.0 - disconnected;
    }
    return std::clamp(f[full], 0.0, 1.0);
}

double exact_connectivity_probability(std::span<const Vec3> points, const ConnectionModel& model) {
    const std::size_t n = points.size();
    if (n > 12) throw SizeError("exact_connectivity_probability: at most 12 nodes supported");
    std::vector<double> h(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            h[i * n + j] = h[j * n + i] = pair_connectedness(model, distance(points[i], points[j]));
        }
    }
    return exact_connectivity_probability(h, n);
}

Vec3 GridSpec::point(std::size_t i, std::size_t j, std::size_t k) const {
    auto axis = [](double lo, double hi, std::size_t count, std::size_t idx) {
        return count <= 1 ? lo : lo + (hi - lo) * static_cast<double>(idx) / static_cast<double>(count - 1);
    };
    return {axis(lo.x, hi.x, nx, i), axis(lo.y, hi.y, ny, j), axis(lo.z, hi.z, nz, k)};
}

double ScalarField::at(std::size_t i, std::size_t j, std::size_t k) const {
    return values.at((k * grid.ny + j) * grid.nx + i);
}

Vec3 ScalarField::argmin() const {
    if (values.empty()) throw DomainError("ScalarField::argmin: empty field");
    const auto idx = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    const std::size_t i = idx % grid.nx;
    const std::size_t j = (idx / grid.nx) % grid.ny;
    const std::size_t k = idx / (grid.nx * grid.ny);
    return grid.point(i, j, k);
}

ScalarField connection_field(std::span<const Vec3> points, const ConnectionModel& model, const GridSpec& grid) {
    if (grid.nx == 0 || grid.ny == 0 || grid.nz == 0) throw DomainError("connection_field: empty grid");
    const LinkEvaluator link(model);
    ScalarField field{grid, std::vector<double>(grid.size(), 0.0)};
    for (std::size_t k = 0; k < grid.nz; ++k) {
        for (std::size_t j = 0; j < grid.ny; ++j) {
            for (std::size_t i = 0; i < grid.nx; ++i) {
                const Vec3 x = grid.point(i, j, k);
                // log prod (1 - H) accumulated to keep resolution near 1.
                double log_miss = 0.0;
                bool certain = false;
                for (const Vec3& p : points) {
                    const double dx = x.x - p.x;
                    const double dy = x.y - p.y;
                    const double dz = x.z - p.z;
                    const double h = link.from_squared(dx * dx + dy * dy + dz * dz);
                    if (h >= 1.0) {
                        certain = true;
                        break;
                    }
                    log_miss += std::log1p(-h);
                }
                field.values[(k * grid.ny + j) * grid.nx + i] = certain ? 1.0 : 0.0 - std::expm1(log_miss);
            }
        }
    }
    return field;
}

}  // namespace confnet
