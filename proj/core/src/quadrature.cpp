#include "confnet/quadrature.hpp"

#include "confnet/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace confnet::quad {

namespace {

// Kronrod nodes on [0, 1] (symmetric), odd indices are the Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod15(const std::function<double(double)>& f, double lo, double hi, int& evals) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kKronrodWeights[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
    evals += 15;
    const double value = kronrod * half;
    const double error = std::abs((kronrod - gauss) * half);
    if (!std::isfinite(value)) throw ConvergenceError("integrate: integrand is not finite");
    return {lo, hi, value, error};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     std::span<const double> breakpoints, const QuadOptions& opts) {
    if (!(lo <= hi)) throw DomainError("integrate: requires lo <= hi");
    QuadResult out;
    if (lo == hi) return out;

    std::vector<double> cuts{lo};
    for (double b : breakpoints) {
        if (b > lo && b < hi) cuts.push_back(b);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p = kronrod15(f, cuts[i], cuts[i + 1], out.evaluations);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    int splits = 0;
    while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (splits >= opts.max_subdivisions) {
            throw ConvergenceError("integrate: error estimate did not reach tolerance");
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // Panel at machine resolution; its error cannot shrink further.
            throw ConvergenceError("integrate: interval underflow before tolerance reached");
        }
        Panel left = kronrod15(f, worst.lo, mid, out.evaluations);
        Panel right = kronrod15(f, mid, worst.hi, out.evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }

    // Re-sum to shed drift from the running updates.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.abs_error = total_err;
    return out;
}

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadOptions& opts) {
    return integrate(f, lo, hi, std::span<const double>{}, opts);
}

}  // namespace confnet::quad
