#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace mpd {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    friend constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

using Point3 = Vec3;

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(const Vec3& a);

bool all_finite(const Vec3& a);

/// det[x1-x0, x2-x0, x3-x0] / 6.  Accepts degenerate vertex sets (returns 0).
double signed_volume(const std::array<Point3, 4>& v);

/// An oriented 3-simplex [x0,x1,x2,x3].  Construction rejects tets whose
/// |signed volume| < 1e-12 * (longest edge)^3; conormal construction divides
/// by face areas, so degenerate cells are unusable downstream.
class Tet {
public:
    explicit Tet(const std::array<Point3, 4>& vertices);
    Tet(const Point3& a, const Point3& b, const Point3& c, const Point3& d)
        : Tet(std::array<Point3, 4>{a, b, c, d}) {}

    const std::array<Point3, 4>& vertices() const { return v_; }
    const Point3& vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
    double signedVolume() const { return signed_volume_; }
    double volume() const { return std::abs(signed_volume_); }
    double longestEdge() const { return longest_edge_; }
    Point3 centroid() const;

    /// Barycentric membership; points on the boundary count as inside.
    bool contains(const Point3& p) const;

    friend bool operator==(const Tet& a, const Tet& b) { return a.v_ == b.v_; }

private:
    std::array<Point3, 4> v_;
    double signed_volume_ = 0.0;
    double longest_edge_ = 0.0;
};

/// A face of a tet, stored with a vertex ordering that makes the right-hand
/// normal point out of the parent cell.  The alternating (-1)^a simplex signs
/// are folded into the ordering so downstream integrals never track signs.
struct OrientedFace {
    int index = 0;                      // a, the omitted vertex
    std::array<Point3, 3> vertices{};   // ordered, outward right-hand normal
    Vec3 unitNormal{};                  // nu^a
    Vec3 vectorArea{};                  // nu^a * area
    double area = 0.0;
};

/// The edge shared by faces a and b, with both in-face outward conormals.
/// Endpoint order realizes the chain sign, so edge(a,b) = -edge(b,a).
struct OrientedEdge {
    int faceA = 0;                      // a
    int faceB = 0;                      // b
    std::array<Point3, 2> endpoints{};
    Vec3 direction{};                   // unit, endpoints[1]-endpoints[0]
    double length = 0.0;
    Vec3 conormalInA{};                 // mu_ab: in face a's plane, out of face a
    Vec3 conormalInB{};                 // mu_ba
};

OrientedFace face(const Tet& t, int a);

OrientedEdge edge_conormals(const Tet& t, int a, int b);

/// Splits w into (w_nu, w_t) with w_nu = (w.nu)nu.  nu must be unit to 1e-12.
std::pair<Vec3, Vec3> tangential_decompose(const Vec3& w, const Vec3& nu);

/// A disjoint union of tets.  Interiors must be pairwise disjoint; faces and
/// edges may touch.  Interior faces are NOT cancelled structurally — each tet
/// keeps its full boundary and cancellation is observed numerically.
class SimplicialRegion {
public:
    SimplicialRegion() = default;
    explicit SimplicialRegion(std::vector<Tet> tets);

    const std::vector<Tet>& tets() const { return tets_; }
    bool empty() const { return tets_.empty(); }

    /// Boundary-inclusive membership in the union.
    bool contains(const Point3& p) const;

    friend bool operator==(const SimplicialRegion& a, const SimplicialRegion& b) {
        return a.tets_ == b.tets_;
    }

private:
    std::vector<Tet> tets_;
};

enum class RegionOverlap { Inside, Disjoint, Straddles };

/// Inside means contained in a single cell of the region (boundary-inclusive);
/// anything that meets the region without fitting in one cell straddles.
RegionOverlap classify_tet(const SimplicialRegion& region, const Tet& t);

/// Separating-axis test: true iff the interiors intersect.  Touching faces,
/// edges, or vertices do not count as overlap.
bool tets_interiors_overlap(const Tet& a, const Tet& b);

}  // namespace mpd
