#pragma once

// High-density full-connectivity probability of a network inside a convex
// right prism, for 2x2 MIMO-MRC links with eta = 2 in three dimensions.
//
// Each boundary feature j of codimension i contributes
//     rho^{1-i} G_j V_j exp(-rho omega_j M'_H)
// and P_fc ~ 1 - sum_j (contribution). The per-feature integrals below are
// the values *before* the global density prefactor, so that
// P_fc ~ 1 - rho (C1 + C2 + ... + U) term by term.

#include "confnet/geometry.hpp"
#include "confnet/linkmodels.hpp"

#include <string>
#include <vector>

namespace confnet {

/// Throws CapabilityError unless model is 2x2 MIMO with eta = 2 and d = 3.
void require_prism_pipeline(const ConnectionModel& model);

/// (23 - sqrt 2) sqrt(pi) / 16, the M'_H of 2x2 MIMO, eta = 2, d = 3, beta = 1.
double mimo22_mass_constant();

/// 256 beta^3 csc(theta) / (343 pi^2 rho^3 theta) * exp(-(23-sqrt2) sqrt(pi) rho theta / (16 beta^1.5))
double corner_contribution(double theta, const ConnectionModel& model, double rho);
/// 16 L beta^2 csc(theta) / (49 pi^2 rho^2) * exp(-(23-sqrt2) sqrt(pi) rho theta / (8 beta^1.5))
double edge_contribution(double theta, double length, const ConnectionModel& model, double rho);
/// 2 beta S / (7 pi rho) * exp(-(23-sqrt2) pi^1.5 rho / (8 beta^1.5))
double face_contribution(double surface_area, const ConnectionModel& model, double rho);
/// V exp(-(23-sqrt2) pi^1.5 rho / (4 beta^1.5))
double bulk_contribution(double volume, const ConnectionModel& model, double rho);

/// One grouped feature class (e.g. all pi/2 corners) and its general-formula
/// parameters.
struct FeatureContribution {
    BoundaryFeature feature;  // grouped: measure summed, multiplicity counted
    std::string label;        // "C1", "C2", "E1", ..., "F", "U"
    double geometric_factor = 0.0;  // G, per unit measure (corners: per corner)
    double exponent_rate = 0.0;     // coefficient of rho in the exponent
    int density_power = 0;          // 1 - codim

    /// Measure entering the general formula: corner count for corners,
    /// total length / area / volume otherwise.
    double weight() const;
    /// General-formula term rho^{1-i} G V e^{-rho * rate} (includes the global rho).
    double term(double rho) const;
    /// term(rho) / rho: the C/E/F/U quantity.
    double contribution(double rho) const;
};

/// Grouped features of the prism with their G, rates and labels. Type-1
/// labels go to right angles, further labels follow in increasing angle.
std::vector<FeatureContribution> feature_ledger(const RightPrism& prism, const ConnectionModel& model);

struct PfcBreakdown {
    double rho = 0.0;
    std::vector<double> terms;  // general-formula terms, aligned with the ledger
    double corners = 0.0;       // summed terms per class
    double edges = 0.0;
    double faces = 0.0;
    double bulk = 0.0;
    double p_fc = 1.0;
    double p_out = 0.0;
    bool out_of_regime = false;  // p_fc < 0 or sqrt(beta) L < 5

    // Cumulative approximations: bulk only, + faces, + edges, + corners (= p_fc).
    double p_fc_bulk() const { return 1.0 - bulk; }
    double p_fc_bulk_faces() const { return 1.0 - bulk - faces; }
    double p_fc_bulk_faces_edges() const { return 1.0 - bulk - faces - edges; }
};

struct PfcCurve {
    std::vector<FeatureContribution> ledger;
    std::vector<PfcBreakdown> points;
};

/// Evaluate the general formula over a density grid.
PfcCurve assemble(const RightPrism& prism, const ConnectionModel& model, const std::vector<double>& rho_grid);

/// Smallest density on [rho_lo, rho_hi] beyond which every corner class term
/// exceeds every edge, face and bulk term, located on a uniform scan with
/// `steps` intervals. Returns rho_hi if not reached.
double corner_dominance_threshold(const PfcCurve& curve_ledger_only, double rho_lo, double rho_hi, int steps = 2000);

}  // namespace confnet
