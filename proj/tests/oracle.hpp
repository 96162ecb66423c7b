#pragma once

// Test-side oracles, independent of the quadrature path under test:
// integrals are computed from the closed-form monomial formulas on the
// reference simplices (a!b!c!/(a+b+c+3)! on the unit tet and its triangle and
// segment analogs) after an exact affine pullback.  Also the shared random
// generators for property-style cases.

#include <algorithm>
#include <array>
#include <random>

#include "mpd/fields.hpp"
#include "mpd/geometry.hpp"

namespace oracle {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Monomial integrals on the reference domains.
inline double ref_tet_monomial(int a, int b, int c) {
    return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
}
inline double ref_triangle_monomial(int a, int b) {
    return factorial(a) * factorial(b) / factorial(a + b + 2);
}
inline double ref_segment_monomial(int a) { return 1.0 / (a + 1); }

inline double integrate_ref_tet(const mpd::PolyScalarField& f) {
    double sum = 0.0;
    for (const auto& [m, c] : f.terms()) sum += c * ref_tet_monomial(m.e[0], m.e[1], m.e[2]);
    return sum;
}

inline double integrate_ref_triangle(const mpd::PolyScalarField& f) {
    double sum = 0.0;
    for (const auto& [m, c] : f.terms()) sum += c * ref_triangle_monomial(m.e[0], m.e[1]);
    return sum;
}

inline double integrate_ref_segment(const mpd::PolyScalarField& f) {
    double sum = 0.0;
    for (const auto& [m, c] : f.terms()) sum += c * ref_segment_monomial(m.e[0]);
    return sum;
}

inline mpd::PolyScalarField affine_coordinate(double origin, const std::array<double, 3>& span) {
    mpd::PolyScalarField r = mpd::PolyScalarField::constant(origin);
    r.addTerm({{1, 0, 0}}, span[0]);
    r.addTerm({{0, 1, 0}}, span[1]);
    r.addTerm({{0, 0, 1}}, span[2]);
    return r;
}

inline double integrate_tet(const mpd::PolyScalarField& f, const mpd::Tet& t) {
    const mpd::Point3& x0 = t.vertex(0);
    const mpd::Vec3 e1 = t.vertex(1) - x0;
    const mpd::Vec3 e2 = t.vertex(2) - x0;
    const mpd::Vec3 e3 = t.vertex(3) - x0;
    const std::array<mpd::PolyScalarField, 3> repl = {
        affine_coordinate(x0.x, {e1.x, e2.x, e3.x}),
        affine_coordinate(x0.y, {e1.y, e2.y, e3.y}),
        affine_coordinate(x0.z, {e1.z, e2.z, e3.z}),
    };
    return integrate_ref_tet(f.substitute(repl)) * 6.0 * t.volume();
}

inline double integrate_face(const mpd::PolyScalarField& f, const mpd::OrientedFace& face) {
    const mpd::Point3& p0 = face.vertices[0];
    const mpd::Vec3 e1 = face.vertices[1] - p0;
    const mpd::Vec3 e2 = face.vertices[2] - p0;
    const std::array<mpd::PolyScalarField, 3> repl = {
        affine_coordinate(p0.x, {e1.x, e2.x, 0.0}),
        affine_coordinate(p0.y, {e1.y, e2.y, 0.0}),
        affine_coordinate(p0.z, {e1.z, e2.z, 0.0}),
    };
    return integrate_ref_triangle(f.substitute(repl)) * 2.0 * face.area;
}

inline double integrate_edge(const mpd::PolyScalarField& f, const mpd::OrientedEdge& e) {
    const mpd::Point3& p0 = e.endpoints[0];
    const mpd::Vec3 d = e.endpoints[1] - p0;
    const std::array<mpd::PolyScalarField, 3> repl = {
        affine_coordinate(p0.x, {d.x, 0.0, 0.0}),
        affine_coordinate(p0.y, {d.y, 0.0, 0.0}),
        affine_coordinate(p0.z, {d.z, 0.0, 0.0}),
    };
    return integrate_ref_segment(f.substitute(repl)) * e.length;
}

// Random-case generators.

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline mpd::Point3 random_point(Rng& rng, double halfWidth = 1.0) {
    return {uniform(rng, -halfWidth, halfWidth), uniform(rng, -halfWidth, halfWidth),
            uniform(rng, -halfWidth, halfWidth)};
}

inline mpd::Tet random_tet(Rng& rng) {
    for (;;) {
        const std::array<mpd::Point3, 4> v = {random_point(rng), random_point(rng),
                                              random_point(rng), random_point(rng)};
        double longest = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                longest = std::max(longest, mpd::norm(v[static_cast<std::size_t>(j)] -
                                                      v[static_cast<std::size_t>(i)]));
            }
        }
        if (std::abs(mpd::signed_volume(v)) >= 5e-3 * longest * longest * longest) {
            return mpd::Tet(v);
        }
    }
}

inline mpd::PolyScalarField random_poly(Rng& rng, int maxDegree) {
    mpd::PolyScalarField f;
    for (int e0 = 0; e0 <= maxDegree; ++e0) {
        for (int e1 = 0; e1 + e0 <= maxDegree; ++e1) {
            for (int e2 = 0; e2 + e1 + e0 <= maxDegree; ++e2) {
                f.addTerm({{e0, e1, e2}}, uniform(rng, -1.0, 1.0));
            }
        }
    }
    return f;
}

inline mpd::PolyVectorField random_vector_poly(Rng& rng, int maxDegree) {
    return {{random_poly(rng, maxDegree), random_poly(rng, maxDegree),
             random_poly(rng, maxDegree)}};
}

}  // namespace oracle
