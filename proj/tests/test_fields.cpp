#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mpd/fields.hpp"
#include "oracle.hpp"

using namespace mpd;

namespace {

PolyScalarField x() { return PolyScalarField::variable(0); }
PolyScalarField y() { return PolyScalarField::variable(1); }
PolyScalarField z() { return PolyScalarField::variable(2); }

double max_coeff(const PolyScalarField& f) {
    double m = 0.0;
    for (const auto& [mi, c] : f.terms()) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

TEST_CASE("evaluation") {
    CHECK((x() * x() + y()).eval({2, 3, 0}) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(PolyScalarField::constant(1.0).eval({5, -3, 9}) == 1.0);
    CHECK((x() * y() * z()).eval({1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(PolyScalarField{}.eval({1, 2, 3}) == 0.0);
}

TEST_CASE("partial derivatives") {
    CHECK((x() * x()).partial(0) == x() * 2.0);
    CHECK((x() * y()).partial(0).partial(1) == PolyScalarField::constant(1.0));
    CHECK((x() * y()).partial(1).partial(0) == PolyScalarField::constant(1.0));
    CHECK((x() * x() + y()).partial(2).isZero());
}

TEST_CASE("mixed partials commute coefficient-wise") {
    oracle::Rng rng(31);
    for (int c = 0; c < 100; ++c) {
        const PolyScalarField f = oracle::random_poly(rng, 6);
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const PolyScalarField d = f.partial(i).partial(j) - f.partial(j).partial(i);
                CHECK(max_coeff(d) <= 1e-15 * (1.0 + max_coeff(f)));
            }
        }
    }
}

TEST_CASE("Leibniz rule on random products") {
    oracle::Rng rng(37);
    for (int c = 0; c < 100; ++c) {
        const PolyScalarField f = oracle::random_poly(rng, 4);
        const PolyScalarField g = oracle::random_poly(rng, 4);
        for (int i = 0; i < 3; ++i) {
            const PolyScalarField lhs = (f * g).partial(i);
            const PolyScalarField rhs = f.partial(i) * g + f * g.partial(i);
            CHECK(max_coeff(lhs - rhs) <= 1e-12 * (1.0 + max_coeff(lhs)));
        }
    }
}

TEST_CASE("compose_flow with a constant translation") {
    const PolyVectorField v = constant_vector_field({1, 0, 0});
    const PolyScalarField moved = compose_flow(x(), v, 0.5);
    CHECK(moved.coefficient({{1, 0, 0}}) == 1.0);
    CHECK(moved.coefficient({{0, 0, 0}}) == 0.5);

    // (x + t)^2 expanded for t = 0.5.
    const PolyScalarField squared = compose_flow(x() * x(), v, 0.5);
    CHECK(squared.coefficient({{2, 0, 0}}) == 1.0);
    CHECK(squared.coefficient({{1, 0, 0}}) == 1.0);
    CHECK(squared.coefficient({{0, 0, 0}}) == 0.25);
}

TEST_CASE("compose_flow at t = 0 is the identity, exactly") {
    oracle::Rng rng(41);
    for (int c = 0; c < 50; ++c) {
        const PolyScalarField f = oracle::random_poly(rng, 5);
        const PolyVectorField v = oracle::random_vector_poly(rng, 3);
        CHECK(compose_flow(f, v, 0.0) == f);
    }
}

TEST_CASE("flow derivative at t = 0 matches the advective term for constant v") {
    oracle::Rng rng(43);
    for (int c = 0; c < 50; ++c) {
        const PolyScalarField f = oracle::random_poly(rng, 4);
        const Vec3 vc = oracle::random_point(rng);
        const PolyVectorField v = constant_vector_field(vc);
        const double h = 1e-6;
        const PolyScalarField diff =
            (compose_flow(f, v, h) - compose_flow(f, v, -h)) * (1.0 / (2.0 * h));
        const PolyScalarField expected =
            f.partial(0) * vc.x + f.partial(1) * vc.y + f.partial(2) * vc.z;
        // Central difference of a polynomial in t is exact through the h^2
        // term, so the mismatch is O(h^2) in the coefficients.
        CHECK(max_coeff(diff - expected) <= 1e-9 * (1.0 + max_coeff(expected)));
    }
}

TEST_CASE("substitute agrees with pointwise composition") {
    oracle::Rng rng(47);
    for (int c = 0; c < 50; ++c) {
        const PolyScalarField f = oracle::random_poly(rng, 4);
        const std::array<PolyScalarField, 3> repl = {oracle::random_poly(rng, 2),
                                                     oracle::random_poly(rng, 2),
                                                     oracle::random_poly(rng, 2)};
        const PolyScalarField composed = f.substitute(repl);
        for (int p = 0; p < 5; ++p) {
            const Point3 pt = oracle::random_point(rng, 0.5);
            const Point3 image = {repl[0].eval(pt), repl[1].eval(pt), repl[2].eval(pt)};
            CHECK(composed.eval(pt) ==
                  doctest::Approx(f.eval(image)).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("degree bookkeeping and zero handling") {
    CHECK(PolyScalarField{}.degree() == 0);
    CHECK(PolyScalarField::constant(3.0).degree() == 0);
    CHECK((x() * y() * z()).degree() == 3);
    PolyScalarField f = x();
    f.addTerm({{1, 0, 0}}, -1.0);  // cancels to zero, term dropped
    CHECK(f.isZero());
    CHECK(f.terms().empty());
    CHECK_THROWS_AS(PolyScalarField::variable(3), std::invalid_argument);
}

TEST_CASE("vector field helpers") {
    const PolyVectorField g{{x() * y(), y() * z(), z() * x()}};
    CHECK(g.divergence() == y() + z() + x());
    CHECK_FALSE(g.isConstant());
    CHECK(constant_vector_field({1, 2, 3}).isConstant());
    const Vec3 at = g.eval({1, 2, 3});
    CHECK(at == Vec3{2, 6, 3});
    CHECK(dot(g, Vec3{1, 0, 0}) == x() * y());
    const PolyVectorField grad = gradient(x() * x() * y());
    CHECK(grad.comp[0] == x() * y() * 2.0);
    CHECK(grad.comp[1] == x() * x());
    CHECK(grad.comp[2].isZero());
}
