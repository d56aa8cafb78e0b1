#include "confnet/geometry.hpp"

#include "confnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace confnet {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double signed_area(const std::vector<Vec2>& poly) {
    double acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        acc += a.x * b.y - b.x * a.y;
    }
    return 0.5 * acc;
}

}  // namespace

double distance(const Vec3& p, const Vec3& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double dz = p.z - q.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

RightPrism::RightPrism(std::vector<Vec2> base_vertices, double height)
    : base_(std::move(base_vertices)), height_(height) {
    if (!std::isfinite(height_) || height_ <= 0.0) throw GeometryError("RightPrism: height must be > 0");
    if (base_.size() < 3) throw GeometryError("RightPrism: base needs at least 3 vertices");
    for (const Vec2& v : base_) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw GeometryError("RightPrism: non-finite vertex");
    }
    double area = signed_area(base_);
    if (area < 0.0) {
        std::reverse(base_.begin(), base_.end());
        area = -area;
    }
    if (!(area > 0.0)) throw GeometryError("RightPrism: base has zero area");

    const std::size_t n = base_.size();
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& prev = base_[(i + n - 1) % n];
        const Vec2& cur = base_[i];
        const Vec2& next = base_[(i + 1) % n];
        const double c = cross(prev, cur, next);
        const double scale = std::hypot(cur.x - prev.x, cur.y - prev.y) * std::hypot(next.x - cur.x, next.y - cur.y);
        if (scale == 0.0) throw GeometryError("RightPrism: repeated vertex");
        if (c <= 1e-12 * scale) {
            throw GeometryError("RightPrism: base must be strictly convex (vertex " + std::to_string(i) + ")");
        }
        const double heading_in = std::atan2(cur.y - prev.y, cur.x - prev.x);
        const double heading_out = std::atan2(next.y - cur.y, next.x - cur.x);
        double turn = heading_out - heading_in;
        while (turn <= -kPi) turn += 2.0 * kPi;
        while (turn > kPi) turn -= 2.0 * kPi;
        turning += turn;
    }
    // A convex vertex sequence that winds more than once is self-intersecting.
    if (std::abs(turning - 2.0 * kPi) > 1e-9) throw GeometryError("RightPrism: base polygon is not simple");

    base_area_ = area;
    for (double len : edge_lengths()) perimeter_ += len;
}

std::vector<double> RightPrism::interior_angles() const {
    const std::size_t n = base_.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& prev = base_[(i + n - 1) % n];
        const Vec2& cur = base_[i];
        const Vec2& next = base_[(i + 1) % n];
        const double ax = prev.x - cur.x;
        const double ay = prev.y - cur.y;
        const double bx = next.x - cur.x;
        const double by = next.y - cur.y;
        out[i] = std::atan2(std::abs(ax * by - ay * bx), ax * bx + ay * by);
    }
    return out;
}

std::vector<double> RightPrism::edge_lengths() const {
    const std::size_t n = base_.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = base_[i];
        const Vec2& b = base_[(i + 1) % n];
        out[i] = std::hypot(b.x - a.x, b.y - a.y);
    }
    return out;
}

double RightPrism::shortest_edge() const {
    const auto lengths = edge_lengths();
    return std::min(*std::min_element(lengths.begin(), lengths.end()), height_);
}

double RightPrism::diameter() const {
    double base_diam = 0.0;
    for (const Vec2& a : base_) {
        for (const Vec2& b : base_) base_diam = std::max(base_diam, std::hypot(b.x - a.x, b.y - a.y));
    }
    return std::hypot(base_diam, height_);
}

bool RightPrism::contains(const Vec3& p, double tol) const {
    if (p.z < -tol || p.z > height_ + tol) return false;
    const std::size_t n = base_.size();
    const Vec2 q{p.x, p.y};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = base_[i];
        const Vec2& b = base_[(i + 1) % n];
        if (cross(a, b, q) < -tol * std::hypot(b.x - a.x, b.y - a.y)) return false;
    }
    return true;
}

RightPrism cube_prism(double side) {
    if (!(side > 0.0)) throw GeometryError("cube_prism: side must be > 0");
    return RightPrism({{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}}, side);
}

RightPrism house_prism(double side) {
    if (!(side > 0.0)) throw GeometryError("house_prism: side must be > 0");
    const double L = side;
    return RightPrism({{0.0, 0.0}, {L, 0.0}, {L, L}, {0.5 * L, 1.5 * L}, {0.0, L}}, L);
}

RightPrism prism_preset(const std::string& name, double side) {
    if (name == "cube") return cube_prism(side);
    if (name == "house") return house_prism(side);
    throw GeometryError("unknown prism preset '" + name + "' (expected cube or house)");
}

const char* to_string(FeatureKind k) {
    switch (k) {
        case FeatureKind::Corner: return "corner";
        case FeatureKind::Edge: return "edge";
        case FeatureKind::Face: return "face";
        case FeatureKind::Bulk: return "bulk";
    }
    return "unknown";
}

std::vector<BoundaryFeature> enumerate_features(const RightPrism& prism) {
    const auto angles = prism.interior_angles();
    const auto lengths = prism.edge_lengths();
    std::vector<BoundaryFeature> out;
    out.reserve(5 * prism.sides() + 2);

    for (int layer = 0; layer < 2; ++layer) {
        for (double theta : angles) out.push_back({FeatureKind::Corner, 3, 1.0, theta, theta, 1});
    }
    constexpr double right = kPi / 2.0;
    for (int layer = 0; layer < 2; ++layer) {
        for (double len : lengths) out.push_back({FeatureKind::Edge, 2, len, 2.0 * right, right, 1});
    }
    for (double theta : angles) out.push_back({FeatureKind::Edge, 2, prism.height(), 2.0 * theta, theta, 1});

    out.push_back({FeatureKind::Face, 1, prism.surface_area(), 2.0 * kPi, std::nullopt, 1});
    out.push_back({FeatureKind::Bulk, 0, prism.volume(), 4.0 * kPi, std::nullopt, 1});
    return out;
}

std::vector<BoundaryFeature> group_features(const std::vector<BoundaryFeature>& features, double angle_tol) {
    std::vector<BoundaryFeature> groups;
    for (const BoundaryFeature& f : features) {
        auto match = std::find_if(groups.begin(), groups.end(), [&](const BoundaryFeature& g) {
            if (g.kind != f.kind) return false;
            if (g.angle.has_value() != f.angle.has_value()) return false;
            return !g.angle || std::abs(*g.angle - *f.angle) <= angle_tol;
        });
        if (match == groups.end()) {
            groups.push_back(f);
            continue;
        }
        match->multiplicity += f.multiplicity;
        if (f.kind != FeatureKind::Corner) match->measure += f.measure;
    }
    return groups;
}

double RightPrism::min_width() const {
    double width = std::numeric_limits<double>::infinity();
    const std::size_t n = base_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = base_[i];
        const Vec2& b = base_[(i + 1) % n];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        double reach = 0.0;
        for (const Vec2& v : base_) {
            reach = std::max(reach, std::abs((b.x - a.x) * (v.y - a.y) - (b.y - a.y) * (v.x - a.x)) / len);
        }
        width = std::min(width, reach);
    }
    return width;
}

double RightPrism::characteristic_length() const { return std::min(height_, min_width()); }

bool outside_boundary_regime(const RightPrism& prism, double beta) {
    return std::sqrt(beta) * prism.characteristic_length() < 5.0;
}

std::vector<Vec3> sample_polygon(const std::vector<Vec2>& poly, std::size_t count, Engine& eng) {
    const std::size_t tris = poly.size() - 2;
    std::vector<double> cumulative(tris);
    double total = 0.0;
    for (std::size_t i = 0; i < tris; ++i) {
        total += 0.5 * std::abs(cross(poly[0], poly[i + 1], poly[i + 2]));
        cumulative[i] = total;
    }
    std::vector<Vec3> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double pick = uniform01(eng) * total;
        const std::size_t t = std::min<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(), tris - 1);
        const double r1 = std::sqrt(uniform01(eng));
        const double r2 = uniform01(eng);
        const Vec2& a = poly[0];
        const Vec2& b = poly[t + 1];
        const Vec2& c = poly[t + 2];
        const double wa = 1.0 - r1;
        const double wb = r1 * (1.0 - r2);
        const double wc = r1 * r2;
        out.push_back({wa * a.x + wb * b.x + wc * c.x, wa * a.y + wb * b.y + wc * c.y, 0.0});
    }
    return out;
}

std::vector<Vec3> sample_uniform(const RightPrism& prism, std::size_t count, Engine& eng) {
    std::vector<Vec3> pts = sample_polygon(prism.base(), count, eng);
    for (Vec3& p : pts) p.z = uniform01(eng) * prism.height();
    return pts;
}

std::vector<Vec3> sample_uniform(const RightPrism& prism, std::size_t count, std::uint64_t seed) {
    Engine eng(seed);
    return sample_uniform(prism, count, eng);
}

}  // namespace confnet
