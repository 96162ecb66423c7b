#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mpd/geometry.hpp"
#include "oracle.hpp"

using namespace mpd;

namespace {

Tet reference_tet() {
    return Tet(Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1});
}

}  // namespace

TEST_CASE("signed volume of the reference tet and its degenerations") {
    CHECK(signed_volume({Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}}) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    // Repeated vertex collapses the volume exactly.
    CHECK(signed_volume({Point3{0, 0, 0}, Point3{0, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}}) ==
          0.0);
    // Odd permutation flips the sign.
    CHECK(signed_volume({Point3{1, 0, 0}, Point3{0, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}}) ==
          doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("signed volume is alternating under vertex permutations") {
    oracle::Rng rng(7);
    for (int c = 0; c < 50; ++c) {
        const Tet t = oracle::random_tet(rng);
        auto v = t.vertices();
        const double vol = signed_volume(v);
        std::swap(v[0], v[2]);
        CHECK(signed_volume(v) == doctest::Approx(-vol).epsilon(1e-13));
        std::swap(v[1], v[3]);  // even permutation overall
        CHECK(signed_volume(v) == doctest::Approx(vol).epsilon(1e-13));
    }
}

TEST_CASE("degenerate tets are rejected") {
    CHECK_THROWS_AS(Tet(Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{1, 1, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Tet(Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{2, 0, 0}, Point3{3, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("reference tet faces carry outward unit normals") {
    const Tet t = reference_tet();

    const OrientedFace bottom = face(t, 3);  // z = 0 plane
    CHECK(norm(bottom.unitNormal - Vec3{0, 0, -1}) < 1e-14);
    CHECK(bottom.area == doctest::Approx(0.5).epsilon(1e-14));

    const OrientedFace slant = face(t, 0);
    const double s = 1.0 / std::sqrt(3.0);
    CHECK(norm(slant.unitNormal - Vec3{s, s, s}) < 1e-14);
    CHECK(slant.area == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));

    CHECK(norm(face(t, 1).unitNormal - Vec3{-1, 0, 0}) < 1e-14);
    CHECK(norm(face(t, 2).unitNormal - Vec3{0, -1, 0}) < 1e-14);
}

TEST_CASE("vector areas of any tet close up") {
    oracle::Rng rng(11);
    for (int c = 0; c < 200; ++c) {
        const Tet t = oracle::random_tet(rng);
        Vec3 sum{};
        double largest = 0.0;
        for (int a = 0; a < 4; ++a) {
            const OrientedFace f = face(t, a);
            sum = sum + f.vectorArea;
            largest = std::max(largest, f.area);
            CHECK(std::abs(norm(f.unitNormal) - 1.0) < 1e-14);
            // Outward: the normal points away from the centroid.
            CHECK(dot(f.unitNormal, f.vertices[0] - t.centroid()) > 0.0);
        }
        CHECK(norm(sum) / largest < 1e-13);
    }
}

TEST_CASE("edge conormals of the reference tet match the in-plane construction") {
    const Tet t = reference_tet();
    // a = z=0 face (index 3), b = x=0 face (index 1); shared edge is the
    // segment (0,0,0)-(0,1,0).
    const OrientedEdge e = edge_conormals(t, 3, 1);
    CHECK(((e.endpoints[0] == Point3{0, 0, 0} && e.endpoints[1] == Point3{0, 1, 0}) ||
           (e.endpoints[0] == Point3{0, 1, 0} && e.endpoints[1] == Point3{0, 0, 0})));
    CHECK(norm(e.conormalInA - Vec3{-1, 0, 0}) < 1e-14);
    CHECK(norm(e.conormalInB - Vec3{0, 0, -1}) < 1e-14);
}

TEST_CASE("edge pair (a,b) and (b,a) share points with opposite orientation") {
    oracle::Rng rng(13);
    for (int c = 0; c < 50; ++c) {
        const Tet t = oracle::random_tet(rng);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                const OrientedEdge ab = edge_conormals(t, a, b);
                const OrientedEdge ba = edge_conormals(t, b, a);
                CHECK(ab.endpoints[0] == ba.endpoints[1]);
                CHECK(ab.endpoints[1] == ba.endpoints[0]);
                CHECK(norm(ab.conormalInA - ba.conormalInB) < 1e-13);
            }
        }
    }
}

TEST_CASE("conormals are unit, in-plane, and perpendicular to the edge") {
    oracle::Rng rng(17);
    for (int c = 0; c < 50; ++c) {
        const Tet t = oracle::random_tet(rng);
        for (int a = 0; a < 4; ++a) {
            const OrientedFace fa = face(t, a);
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                const OrientedEdge e = edge_conormals(t, a, b);
                CHECK(std::abs(norm(e.conormalInA) - 1.0) < 1e-12);
                CHECK(std::abs(dot(e.conormalInA, fa.unitNormal)) < 1e-12);
                CHECK(std::abs(dot(e.conormalInA, e.direction)) < 1e-12);
                // Points out of face a: away from the off-edge vertex x_b.
                CHECK(dot(e.conormalInA, t.vertex(b) - e.endpoints[0]) < 0.0);
            }
        }
    }
}

TEST_CASE("tangential decomposition") {
    const auto [wn, wt] = tangential_decompose({1, 2, 3}, {0, 0, 1});
    CHECK(norm(wn - Vec3{0, 0, 3}) < 1e-15);
    CHECK(norm(wt - Vec3{1, 2, 0}) < 1e-15);

    const Vec3 nu = normalized({1, 1, 1});
    const auto [nn, nt] = tangential_decompose(nu, nu);
    CHECK(norm(nn - nu) < 1e-15);
    CHECK(norm(nt) < 1e-15);

    const auto [pn, pt] = tangential_decompose({1, 1, 1}, nu);
    CHECK(norm(pt) < 1e-15);

    CHECK_THROWS_AS(tangential_decompose({1, 2, 3}, {0, 0, 2}), std::invalid_argument);

    oracle::Rng rng(23);
    for (int c = 0; c < 100; ++c) {
        const Vec3 w = oracle::random_point(rng);
        const Vec3 n = normalized(oracle::random_point(rng) + Vec3{0.1, 0.2, 0.3});
        const auto [a, b] = tangential_decompose(w, n);
        CHECK(norm(a + b - w) < 1e-14);
        CHECK(std::abs(dot(b, n)) < 1e-13);
    }
}

TEST_CASE("regions reject overlapping tets and accept face-adjacent ones") {
    const Tet a = reference_tet();
    const Tet b(Point3{0.1, 0.1, 0.1}, Point3{1.1, 0.1, 0.1}, Point3{0.1, 1.1, 0.1},
                 Point3{0.1, 0.1, 1.1});
    CHECK_THROWS_AS(SimplicialRegion({a, b}), std::invalid_argument);

    // Mirror of the reference tet across its slant face: interiors disjoint.
    const Tet mirrored(Point3{2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0}, Point3{1, 0, 0},
                        Point3{0, 1, 0}, Point3{0, 0, 1});
    const SimplicialRegion region({a, mirrored});
    CHECK(region.tets().size() == 2);
    CHECK(region.contains({0.25, 0.25, 0.25}));
    CHECK(region.contains({0.5, 0.5, 0.5}));
    CHECK_FALSE(region.contains({2, 2, 2}));
    CHECK(region.contains({0, 0, 0}));  // boundary counts as inside
}

TEST_CASE("tet classification against a region") {
    const Tet cell = reference_tet();
    const SimplicialRegion region({cell});

    CHECK(classify_tet(region, cell) == RegionOverlap::Inside);

    const Tet shrunk(Point3{0.1, 0.1, 0.1}, Point3{0.5, 0.1, 0.1}, Point3{0.1, 0.5, 0.1},
                      Point3{0.1, 0.1, 0.5});
    CHECK(classify_tet(region, shrunk) == RegionOverlap::Inside);

    const Tet far(Point3{5, 5, 5}, Point3{6, 5, 5}, Point3{5, 6, 5}, Point3{5, 5, 6});
    CHECK(classify_tet(region, far) == RegionOverlap::Disjoint);

    const Tet touching(Point3{1, 0, 0}, Point3{2, 0, 0}, Point3{1, 1, 0}, Point3{1, 0, 1});
    CHECK(classify_tet(region, touching) == RegionOverlap::Disjoint);

    const Tet straddling(Point3{0.2, 0.2, 0.2}, Point3{2, 0.2, 0.2}, Point3{0.2, 2, 0.2},
                          Point3{0.2, 0.2, 2});
    CHECK(classify_tet(region, straddling) == RegionOverlap::Straddles);
}
