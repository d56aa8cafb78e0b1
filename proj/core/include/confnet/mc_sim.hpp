#pragma once

// Monte Carlo estimation of the full-connectivity probability: binomial
// (fixed N) node placement in a prism, independent links drawn with
// probability H(r_ij), connectivity by union-find. Also an exact
// subset-recursion oracle for small N and the "new node" connection field.

#include "confnet/geometry.hpp"
#include "confnet/linkmodels.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace confnet {

/// Fast H(r) for the inner loops: dispatch resolved once, with elementary
/// closed forms for SISO and 2x2 MIMO, and squared-distance entry points.
class LinkEvaluator {
public:
    explicit LinkEvaluator(const ConnectionModel& model);

    double operator()(double r) const;
    double from_squared(double r2) const;

    /// Smallest r with H(r') < threshold for all r' >= r, searched up to r_max
    /// (returns r_max when H stays above threshold there).
    double support_radius(double threshold, double r_max) const;

private:
    enum class Path { Siso, Mimo22, UnitDisk, General };
    ConnectionModel model_;
    Path path_ = Path::General;
    double beta_ = 1.0;
    double eta_ = 2.0;
    double disk_radius_ = 1.0;
    double disk_plateau_ = 0.0;
};

struct McConfig {
    McConfig(ConnectionModel model, RightPrism prism, std::size_t node_count, std::size_t trials, std::uint64_t seed);

    /// N = round(rho V).
    static McConfig from_density(double rho, ConnectionModel model, RightPrism prism, std::size_t trials,
                                 std::uint64_t seed);

    ConnectionModel model;
    RightPrism prism;
    std::size_t node_count;
    std::size_t trials;
    std::uint64_t seed;
    unsigned threads = 1;
    /// Draw N ~ Poisson(node_count) per trial instead of a fixed N.
    bool poisson_nodes = false;
    /// Pairs farther apart than the radius where H drops below this value are
    /// never linked (expected number of dropped links per trial is bounded
    /// by N^2/2 times this).
    double link_floor = 1e-12;

    void validate() const;
};

struct McEstimate {
    double p_fc_hat = 0.0;
    std::size_t trials = 0;
    std::size_t connected = 0;
    double ci_low = 0.0;   // 95% Wilson score interval
    double ci_high = 1.0;
    double mean_isolated = 0.0;  // average number of degree-0 nodes per trial
    double p_isolated_hat = 0.0; // fraction of trials with at least one isolated node
};

/// Wilson score interval for `successes` out of `trials` at normal quantile z.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Trial-level outcome, exposed for tests and custom reductions.
struct TrialOutcome {
    bool connected = false;
    std::size_t isolated = 0;
};

/// Realize the random links among fixed `points` once and report the outcome.
TrialOutcome realize_links(std::span<const Vec3> points, const LinkEvaluator& link, double cutoff_radius,
                           Engine& eng);

/// Full Monte Carlo estimate. Trial t uses the substream derive_seed(seed, t),
/// so results do not depend on the number of worker threads.
McEstimate run_trials(const McConfig& config);

/// Resample only the links among fixed positions `resamples` times.
McEstimate resample_links(std::span<const Vec3> points, const ConnectionModel& model, std::size_t resamples,
                          std::uint64_t seed, unsigned threads = 1);

/// Exact probability that the random graph with independent link
/// probabilities H(r_ij) is connected, by the subset recursion
///   f(S) = 1 - sum_{T < S, anchor in T} f(T) prod_{i in T, j in S\T} (1 - H_ij).
/// Throws SizeError for more than 12 points.
double exact_connectivity_probability(std::span<const Vec3> points, const ConnectionModel& model);

/// Same recursion from an explicit symmetric link-probability matrix
/// (row-major n x n, diagonal ignored).
double exact_connectivity_probability(std::span<const double> link_prob, std::size_t n);

/// Regular lattice of nx * ny * nz points spanning [lo, hi] per axis
/// (inclusive); an axis with one point sits at lo.
struct GridSpec {
    Vec3 lo;
    Vec3 hi;
    std::size_t nx = 1;
    std::size_t ny = 1;
    std::size_t nz = 1;

    std::size_t size() const { return nx * ny * nz; }
    Vec3 point(std::size_t i, std::size_t j, std::size_t k) const;
};

struct ScalarField {
    GridSpec grid;
    std::vector<double> values;  // index (k * ny + j) * nx + i

    double at(std::size_t i, std::size_t j, std::size_t k = 0) const;
    /// Grid location of the smallest value (first in index order on ties).
    Vec3 argmin() const;
};

/// 1 - prod_i (1 - H(|x - r_i|)) at every grid point: the probability that a
/// node added at x links directly to at least one existing node.
ScalarField connection_field(std::span<const Vec3> points, const ConnectionModel& model, const GridSpec& grid);

/// Run `work(i)` for i in [0, count) on up to `threads` workers; each index
/// is processed exactly once. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& work);

}  // namespace confnet
