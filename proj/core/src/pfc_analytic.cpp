#include "confnet/pfc_analytic.hpp"

#include "confnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <variant>

namespace confnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kSqrtPi = std::sqrt(kPi);

void check_rho(double rho) {
    if (!std::isfinite(rho) || rho < 0.0) throw DomainError("density must be finite and >= 0");
}

void check_angle(double theta) {
    if (!(theta > 0.0 && theta < kPi)) throw DomainError("opening angle must lie in (0, pi)");
}

double beta_of(const ConnectionModel& model) { return model.params().beta; }

// Closed-form exponent coefficients (units length^3), per feature class.
double corner_rate(double theta, double beta) {
    return (23.0 - kSqrt2) * kSqrtPi * theta / (16.0 * std::pow(beta, 1.5));
}
double edge_rate(double theta, double beta) {
    return (23.0 - kSqrt2) * kSqrtPi * theta / (8.0 * std::pow(beta, 1.5));
}
double face_rate(double beta) { return (23.0 - kSqrt2) * std::pow(kPi, 1.5) / (8.0 * std::pow(beta, 1.5)); }
double bulk_rate(double beta) { return (23.0 - kSqrt2) * std::pow(kPi, 1.5) / (4.0 * std::pow(beta, 1.5)); }

// Geometric factors G (general formula, global rho included).
double corner_factor(double theta, double beta) {
    return 256.0 * beta * beta * beta / (343.0 * kPi * kPi * std::sin(theta) * theta);
}
double edge_factor(double theta, double beta) { return 16.0 * beta * beta / (49.0 * kPi * kPi * std::sin(theta)); }
double face_factor(double beta) { return 2.0 * beta / (7.0 * kPi); }

}  // namespace

void require_prism_pipeline(const ConnectionModel& model) {
    const auto* mimo = std::get_if<Mimo>(&model.kind());
    const PathLossParams& p = model.params();
    if (mimo == nullptr || mimo->n_t != 2 || mimo->n_r != 2 || p.eta != 2.0 || p.dim != 3) {
        throw CapabilityError("prism analytics are derived for 2x2 MIMO links with eta = 2, d = 3 only (got " +
                              model.describe() + ")");
    }
}

double mimo22_mass_constant() { return (23.0 - kSqrt2) * kSqrtPi / 16.0; }

double corner_contribution(double theta, const ConnectionModel& model, double rho) {
    require_prism_pipeline(model);
    check_angle(theta);
    check_rho(rho);
    const double beta = beta_of(model);
    return 256.0 * beta * beta * beta / (343.0 * kPi * kPi * rho * rho * rho * theta * std::sin(theta)) *
           std::exp(-rho * corner_rate(theta, beta));
}

double edge_contribution(double theta, double length, const ConnectionModel& model, double rho) {
    require_prism_pipeline(model);
    check_angle(theta);
    check_rho(rho);
    if (!(length > 0.0)) throw DomainError("edge length must be > 0");
    const double beta = beta_of(model);
    return 16.0 * length * beta * beta / (49.0 * kPi * kPi * rho * rho * std::sin(theta)) *
           std::exp(-rho * edge_rate(theta, beta));
}

double face_contribution(double surface_area, const ConnectionModel& model, double rho) {
    require_prism_pipeline(model);
    check_rho(rho);
    if (!(surface_area > 0.0)) throw DomainError("surface area must be > 0");
    const double beta = beta_of(model);
    return 2.0 * beta * surface_area / (7.0 * kPi * rho) * std::exp(-rho * face_rate(beta));
}

double bulk_contribution(double volume, const ConnectionModel& model, double rho) {
    require_prism_pipeline(model);
    check_rho(rho);
    if (!(volume > 0.0)) throw DomainError("volume must be > 0");
    return volume * std::exp(-rho * bulk_rate(beta_of(model)));
}

double FeatureContribution::weight() const {
    return feature.kind == FeatureKind::Corner ? static_cast<double>(feature.multiplicity) : feature.measure;
}

double FeatureContribution::term(double rho) const {
    check_rho(rho);
    if (rho == 0.0) {
        if (density_power > 0) return 0.0;
        return density_power == 0 ? geometric_factor * weight() : std::numeric_limits<double>::infinity();
    }
    return std::pow(rho, density_power) * geometric_factor * weight() * std::exp(-rho * exponent_rate);
}

double FeatureContribution::contribution(double rho) const { return term(rho) / rho; }

std::vector<FeatureContribution> feature_ledger(const RightPrism& prism, const ConnectionModel& model) {
    require_prism_pipeline(model);
    const double beta = beta_of(model);
    auto grouped = group_features(enumerate_features(prism));
    // Right angles first, then increasing angle within each class.
    std::stable_sort(grouped.begin(), grouped.end(), [](const BoundaryFeature& a, const BoundaryFeature& b) {
        if (a.codim != b.codim) return a.codim > b.codim;
        if (!a.angle || !b.angle) return false;
        const bool ar = std::abs(*a.angle - kPi / 2.0) < 1e-9;
        const bool br = std::abs(*b.angle - kPi / 2.0) < 1e-9;
        if (ar != br) return ar;
        return *a.angle < *b.angle;
    });

    std::vector<FeatureContribution> ledger;
    int corner_idx = 0;
    int edge_idx = 0;
    for (const BoundaryFeature& f : grouped) {
        FeatureContribution c;
        c.feature = f;
        c.density_power = 1 - f.codim;
        switch (f.kind) {
            case FeatureKind::Corner:
                c.label = "C" + std::to_string(++corner_idx);
                c.geometric_factor = corner_factor(*f.angle, beta);
                c.exponent_rate = corner_rate(*f.angle, beta);
                break;
            case FeatureKind::Edge:
                c.label = "E" + std::to_string(++edge_idx);
                c.geometric_factor = edge_factor(*f.angle, beta);
                c.exponent_rate = edge_rate(*f.angle, beta);
                break;
            case FeatureKind::Face:
                c.label = "F";
                c.geometric_factor = face_factor(beta);
                c.exponent_rate = face_rate(beta);
                break;
            case FeatureKind::Bulk:
                c.label = "U";
                c.geometric_factor = 1.0;
                c.exponent_rate = bulk_rate(beta);
                break;
        }
        ledger.push_back(std::move(c));
    }
    return ledger;
}

PfcCurve assemble(const RightPrism& prism, const ConnectionModel& model, const std::vector<double>& rho_grid) {
    PfcCurve curve;
    curve.ledger = feature_ledger(prism, model);
    const bool small_prism = outside_boundary_regime(prism, beta_of(model));
    curve.points.reserve(rho_grid.size());
    for (double rho : rho_grid) {
        check_rho(rho);
        PfcBreakdown b;
        b.rho = rho;
        for (const FeatureContribution& c : curve.ledger) {
            const double t = c.term(rho);
            b.terms.push_back(t);
            switch (c.feature.kind) {
                case FeatureKind::Corner: b.corners += t; break;
                case FeatureKind::Edge: b.edges += t; break;
                case FeatureKind::Face: b.faces += t; break;
                case FeatureKind::Bulk: b.bulk += t; break;
            }
        }
        b.p_out = b.corners + b.edges + b.faces + b.bulk;
        b.p_fc = 1.0 - b.p_out;
        b.out_of_regime = small_prism || b.p_fc < 0.0 || rho == 0.0;
        curve.points.push_back(std::move(b));
    }
    return curve;
}

double corner_dominance_threshold(const PfcCurve& curve, double rho_lo, double rho_hi, int steps) {
    if (!(rho_lo > 0.0 && rho_hi > rho_lo) || steps < 1) throw DomainError("corner_dominance_threshold: bad range");
    auto dominated = [&](double rho) {
        double weakest_corner = std::numeric_limits<double>::infinity();
        double strongest_other = 0.0;
        for (const FeatureContribution& c : curve.ledger) {
            const double t = c.term(rho);
            if (c.feature.kind == FeatureKind::Corner) {
                weakest_corner = std::min(weakest_corner, t);
            } else {
                strongest_other = std::max(strongest_other, t);
            }
        }
        return weakest_corner > strongest_other;
    };
    double threshold = rho_hi;
    for (int i = steps; i >= 0; --i) {
        const double rho = rho_lo + (rho_hi - rho_lo) * i / steps;
        if (!dominated(rho)) break;
        threshold = rho;
    }
    return threshold;
}

}  // namespace confnet
