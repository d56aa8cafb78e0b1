#pragma once

// Convex right prisms: a convex polygon base extruded along z by `height`.

#include "confnet/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace confnet {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Euclidean distance.
double distance(const Vec3& p, const Vec3& q);

class RightPrism {
public:
    /// Validates the base (>= 3 vertices, simple, strictly convex, positive
    /// area). Clockwise input is reversed to counter-clockwise. Throws
    /// GeometryError otherwise.
    RightPrism(std::vector<Vec2> base_vertices, double height);

    const std::vector<Vec2>& base() const { return base_; }
    double height() const { return height_; }
    std::size_t sides() const { return base_.size(); }

    double base_area() const { return base_area_; }
    double perimeter() const { return perimeter_; }
    double volume() const { return base_area_ * height_; }
    double surface_area() const { return 2.0 * base_area_ + perimeter_ * height_; }

    /// Interior angle at each base vertex, in (0, pi).
    std::vector<double> interior_angles() const;
    /// Length of base edge i (vertex i to vertex i+1).
    std::vector<double> edge_lengths() const;
    double shortest_edge() const;
    /// Smallest distance between two parallel lines enclosing the base.
    double min_width() const;
    /// min(height, min_width): the side L for the cube and house presets.
    double characteristic_length() const;
    /// Largest distance between two points of the prism.
    double diameter() const;
    bool contains(const Vec3& p, double tol = 1e-12) const;

private:
    std::vector<Vec2> base_;
    double height_;
    double base_area_ = 0.0;
    double perimeter_ = 0.0;
};

/// Square-base prism of side L and height L.
RightPrism cube_prism(double side);

/// Pentagon-base "house" prism: vertices (0,0), (L,0), (L,L), (L/2,3L/2),
/// (0,L), extruded by L. V = 5L^3/4, S = (11 + 2 sqrt 2) L^2 / 2.
RightPrism house_prism(double side);

/// Preset lookup: "cube" or "house". GeometryError for anything else.
RightPrism prism_preset(const std::string& name, double side);

enum class FeatureKind { Corner, Edge, Face, Bulk };

const char* to_string(FeatureKind k);

struct BoundaryFeature {
    FeatureKind kind = FeatureKind::Bulk;
    int codim = 0;          // 3 corner, 2 edge, 1 face, 0 bulk
    double measure = 0.0;   // 1 for corners, length, area, volume
    double solid_angle = 0.0;
    std::optional<double> angle;  // opening angle for corners and edges
    int multiplicity = 1;
};

/// 2n corners (opening angle = base interior angle), 3n edges (top/bottom
/// base edges at the pi/2 base-to-wall dihedral, n vertical edges at the
/// base interior angle), one aggregated face feature of measure S, one bulk
/// feature of measure V. Solid angles: corner theta, edge 2 theta, face 2 pi,
/// bulk 4 pi.
std::vector<BoundaryFeature> enumerate_features(const RightPrism& prism);

/// Merge features of equal kind and angle (within tol): corners add
/// multiplicity, edges add length (multiplicity counts the edges).
std::vector<BoundaryFeature> group_features(const std::vector<BoundaryFeature>& features,
                                            double angle_tol = 1e-9);

/// True when sqrt(beta) times the characteristic length is below 5, i.e.
/// outside the regime where the boundary expansions hold.
bool outside_boundary_regime(const RightPrism& prism, double beta);

/// `count` i.i.d. uniform points in the polygon (z = 0), by fan triangulation
/// with area-weighted triangle choice and barycentric sampling.
std::vector<Vec3> sample_polygon(const std::vector<Vec2>& convex_polygon, std::size_t count, Engine& eng);

/// `count` i.i.d. uniform points in the prism.
std::vector<Vec3> sample_uniform(const RightPrism& prism, std::size_t count, Engine& eng);
std::vector<Vec3> sample_uniform(const RightPrism& prism, std::size_t count, std::uint64_t seed);

}  // namespace confnet
