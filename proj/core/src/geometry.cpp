#include "mpd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpd {

namespace {

constexpr double kDegeneracyFactor = 1e-12;   // |V| >= factor * L^3
constexpr double kBarycentricTol = 1e-10;     // boundary-inclusive membership
constexpr double kSatTol = 1e-10;             // separating-axis slack, relative

}  // namespace

Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
    return a / n;
}

bool all_finite(const Vec3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

double signed_volume(const std::array<Point3, 4>& v) {
    return dot(cross(v[1] - v[0], v[2] - v[0]), v[3] - v[0]) / 6.0;
}

Tet::Tet(const std::array<Point3, 4>& vertices) : v_(vertices) {
    for (const auto& p : v_) {
        if (!all_finite(p)) throw std::invalid_argument("Tet: non-finite vertex");
    }
    signed_volume_ = signed_volume(v_);
    longest_edge_ = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            longest_edge_ = std::max(longest_edge_, norm(v_[static_cast<std::size_t>(j)] -
                                                          v_[static_cast<std::size_t>(i)]));
        }
    }
    const double threshold = kDegeneracyFactor * longest_edge_ * longest_edge_ * longest_edge_;
    if (!(std::abs(signed_volume_) > threshold)) {
        throw std::invalid_argument("Tet: degenerate (|signed volume| below threshold)");
    }
}

Point3 Tet::centroid() const {
    return (v_[0] + v_[1] + v_[2] + v_[3]) / 4.0;
}

bool Tet::contains(const Point3& p) const {
    // Solve [x1-x0, x2-x0, x3-x0] lambda = p - x0 by Cramer's rule.
    const Vec3 e1 = v_[1] - v_[0];
    const Vec3 e2 = v_[2] - v_[0];
    const Vec3 e3 = v_[3] - v_[0];
    const Vec3 r = p - v_[0];
    const double det = dot(cross(e1, e2), e3);
    const double l1 = dot(cross(r, e2), e3) / det;
    const double l2 = dot(cross(e1, r), e3) / det;
    const double l3 = dot(cross(e1, e2), r) / det;
    const double l0 = 1.0 - l1 - l2 - l3;
    return l0 >= -kBarycentricTol && l1 >= -kBarycentricTol && l2 >= -kBarycentricTol &&
           l3 >= -kBarycentricTol;
}

OrientedFace face(const Tet& t, int a) {
    if (a < 0 || a > 3) throw std::invalid_argument("face: index out of range");
    OrientedFace f;
    f.index = a;
    int k = 0;
    for (int i = 0; i < 4; ++i) {
        if (i != a) f.vertices[static_cast<std::size_t>(k++)] = t.vertex(i);
    }
    // (-1)^a, plus a flip for negatively oriented tets, realized as an ordering.
    const bool flip = ((a % 2) != 0) != (t.signedVolume() < 0.0);
    if (flip) std::swap(f.vertices[1], f.vertices[2]);
    const Vec3 va = cross(f.vertices[1] - f.vertices[0], f.vertices[2] - f.vertices[0]) * 0.5;
    f.vectorArea = va;
    f.area = norm(va);
    if (f.area == 0.0) throw std::invalid_argument("face: degenerate face");
    f.unitNormal = va / f.area;
    return f;
}

OrientedEdge edge_conormals(const Tet& t, int a, int b) {
    if (a == b) throw std::invalid_argument("edge_conormals: a == b");
    if (a < 0 || a > 3 || b < 0 || b > 3) {
        throw std::invalid_argument("edge_conormals: index out of range");
    }
    // Edge endpoints: the two vertices on neither omitted index, ascending.
    int c = -1, d = -1;
    for (int i = 0; i < 4; ++i) {
        if (i == a || i == b) continue;
        (c < 0 ? c : d) = i;
    }
    OrientedEdge e;
    e.faceA = a;
    e.faceB = b;
    e.endpoints = {t.vertex(c), t.vertex(d)};
    // Chain sign (-1)^{a+b} for b<a, (-1)^{a+b+1} for b>a, realized as ordering,
    // so that edge(a,b) and edge(b,a) carry opposite orientations.
    const int sign = (b < a) ? (((a + b) % 2 == 0) ? 1 : -1) : (((a + b) % 2 == 0) ? -1 : 1);
    if (sign < 0) std::swap(e.endpoints[0], e.endpoints[1]);
    const Vec3 delta = e.endpoints[1] - e.endpoints[0];
    e.length = norm(delta);
    if (e.length == 0.0) throw std::invalid_argument("edge_conormals: zero-length edge");
    e.direction = delta / e.length;

    // mu_xy: in face x's plane, perpendicular to the edge, pointing away from
    // the face's off-edge vertex (which is the omitted index of the other face).
    const auto conormal = [&](int faceIdx, int offEdgeVertex) {
        const OrientedFace f = face(t, faceIdx);
        const Vec3 w = t.vertex(offEdgeVertex) - e.endpoints[0];
        Vec3 wt = w - dot(w, e.direction) * e.direction;
        wt = wt - dot(wt, f.unitNormal) * f.unitNormal;  // already in-plane up to rounding
        return -normalized(wt);
    };
    e.conormalInA = conormal(a, b);
    e.conormalInB = conormal(b, a);
    return e;
}

std::pair<Vec3, Vec3> tangential_decompose(const Vec3& w, const Vec3& nu) {
    if (std::abs(norm(nu) - 1.0) > 1e-12) {
        throw std::invalid_argument("tangential_decompose: nu is not a unit vector");
    }
    const Vec3 wn = dot(w, nu) * nu;
    return {wn, w - wn};
}

namespace {

struct Interval {
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
};

Interval project(const Tet& t, const Vec3& axis) {
    Interval iv;
    for (const auto& p : t.vertices()) {
        const double s = dot(p, axis);
        iv.lo = std::min(iv.lo, s);
        iv.hi = std::max(iv.hi, s);
    }
    return iv;
}

bool separated_along(const Tet& a, const Tet& b, const Vec3& axis, double eps) {
    const double n = norm(axis);
    if (n < 1e-14) return false;  // degenerate axis, no information
    const Vec3 u = axis / n;
    const Interval ia = project(a, u);
    const Interval ib = project(b, u);
    return ia.hi <= ib.lo + eps || ib.hi <= ia.lo + eps;
}

}  // namespace

bool tets_interiors_overlap(const Tet& a, const Tet& b) {
    const double scale = std::max(a.longestEdge(), b.longestEdge());
    const double eps = kSatTol * scale;

    const auto faceNormals = [](const Tet& t, Vec3 out[4]) {
        for (int i = 0; i < 4; ++i) out[i] = face(t, i).unitNormal;
    };
    Vec3 na[4], nb[4];
    faceNormals(a, na);
    faceNormals(b, nb);
    for (const auto& n : na) {
        if (separated_along(a, b, n, eps)) return false;
    }
    for (const auto& n : nb) {
        if (separated_along(a, b, n, eps)) return false;
    }
    static constexpr int edgePairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (const auto& ea : edgePairs) {
        const Vec3 da = a.vertex(ea[1]) - a.vertex(ea[0]);
        for (const auto& eb : edgePairs) {
            const Vec3 db = b.vertex(eb[1]) - b.vertex(eb[0]);
            if (separated_along(a, b, cross(da, db), eps)) return false;
        }
    }
    return true;
}

SimplicialRegion::SimplicialRegion(std::vector<Tet> tets) : tets_(std::move(tets)) {
    for (std::size_t i = 0; i < tets_.size(); ++i) {
        for (std::size_t j = i + 1; j < tets_.size(); ++j) {
            if (tets_interiors_overlap(tets_[i], tets_[j])) {
                throw std::invalid_argument("SimplicialRegion: tet interiors overlap");
            }
        }
    }
}

bool SimplicialRegion::contains(const Point3& p) const {
    for (const auto& t : tets_) {
        if (t.contains(p)) return true;
    }
    return false;
}

RegionOverlap classify_tet(const SimplicialRegion& region, const Tet& t) {
    for (const auto& cell : region.tets()) {
        bool inside = true;
        for (const auto& p : t.vertices()) {
            if (!cell.contains(p)) {
                inside = false;
                break;
            }
        }
        if (inside) return RegionOverlap::Inside;
    }
    for (const auto& cell : region.tets()) {
        if (tets_interiors_overlap(cell, t)) return RegionOverlap::Straddles;
    }
    return RegionOverlap::Disjoint;
}

}  // namespace mpd
