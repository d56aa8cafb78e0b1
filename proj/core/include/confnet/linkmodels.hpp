#pragma once

// Pair-connectedness H(r): probability that two nodes a distance r apart
// share a direct link, for Rayleigh-faded SISO, SIMO/MISO and MIMO-MRC links
// plus the hard unit-disk limit. All fading models are H(r) = 1 - F_X(beta r^eta)
// for the channel power X of the respective link.

#include <optional>
#include <string>
#include <variant>

namespace confnet {

struct PathLossParams {
    double beta = 1.0;  // length^{-eta}; inversely proportional to mean SNR
    double eta = 2.0;   // path-loss exponent, >= 2
    int dim = 3;        // spatial dimension d in {1, 2, 3}

    void validate() const;
    double scaled_distance(double r) const;  // beta * r^eta
};

struct Siso {};

struct SimoMiso {
    int m = 1;  // diversity branches
};

struct Mimo {
    int n_t = 2;
    int n_r = 2;
    int m() const { return n_t < n_r ? n_t : n_r; }
    int n() const { return n_t < n_r ? n_r : n_t; }
};

struct UnitDisk {
    double radius = 1.0;
    // Value at exactly r == radius. Unset means e^{-beta}, the SISO
    // complement 1 - F_X(beta) at the threshold.
    std::optional<double> plateau;
};

using LinkKind = std::variant<Siso, SimoMiso, Mimo, UnitDisk>;

class ConnectionModel {
public:
    static ConnectionModel siso(PathLossParams p);
    static ConnectionModel simo_miso(int m, PathLossParams p);
    static ConnectionModel mimo(int n_t, int n_r, PathLossParams p);
    static ConnectionModel unit_disk(double radius, PathLossParams p,
                                     std::optional<double> plateau = std::nullopt);

    const LinkKind& kind() const { return kind_; }
    const PathLossParams& params() const { return params_; }

    /// "siso", "simo(m=4)", "mimo(2x3)", "unitdisk(r=1)".
    std::string describe() const;

    /// Effective diversity order used by the scaling laws: 1 for SISO, m for
    /// SIMO/MISO, n = max(n_t, n_r) for MIMO. Throws CapabilityError for UnitDisk.
    int diversity() const;

    /// Copy with a different path-loss parameter set.
    ConnectionModel with_params(PathLossParams p) const;

private:
    ConnectionModel(LinkKind k, PathLossParams p);
    LinkKind kind_;
    PathLossParams params_;
};

/// H(r) for any supported model. Throws DomainError for negative or
/// non-finite r.
double pair_connectedness(const ConnectionModel& model, double r);

/// MIMO-MRC H(r) through the largest-eigenvalue determinant
/// 1 - kappa_{m,n} det[gamma(n - m + i + j - 1, beta r^eta)]_{i,j=1..m},
/// evaluated literally for m = min(n_t, n_r) in {1, 2}; CapabilityError above.
double pair_connectedness_mimo_det(int n_t, int n_r, const PathLossParams& params, double r);

/// MIMO (m = 2) H(r) rearranged into unregularized upper incomplete gammas:
///   [n G(n-1) - 2 G(n) + G(n+1)/(n-1)] / Gamma(n-1)
///   + [G(n)^2 - G(n-1) G(n+1)] / (Gamma(n) Gamma(n-1)),   G(s) = Gamma(s, beta r^eta).
double mimo_gamma_form(int n, const PathLossParams& params, double r);

/// MIMO (m = 2) H as a function of x = beta r^eta, expanded in regularized
/// lower incomplete gammas: 1 - n P(n-1,x) P(n+1,x) + (n-1) P(n,x)^2.
double mimo_m2_of_scaled(int n, double x);

}  // namespace confnet
