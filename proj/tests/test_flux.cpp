#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mpd/bound.hpp"
#include "mpd/flux.hpp"
#include "mpd/mechanics.hpp"
#include "oracle.hpp"

using namespace mpd;

namespace {

Tet reference_tet() {
    return Tet(Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1});
}

PolyScalarField x() { return PolyScalarField::variable(0); }
PolyScalarField y() { return PolyScalarField::variable(1); }
PolyScalarField z() { return PolyScalarField::variable(2); }

PolyVectorField identity_field() { return {{x(), y(), z()}}; }

}  // namespace

TEST_CASE("boundary flux is u . nu on the face") {
    const Tet t = reference_tet();
    const BalanceSystem radial{identity_field(), {}, {}};

    const PolyScalarField onBottom = boundary_flux({{{x(), {}, {}}}, {}, {}}, face(t, 3));
    CHECK(onBottom.isZero());

    const PolyScalarField onYZ =
        boundary_flux({constant_vector_field({1, 0, 0}), {}, {}}, face(t, 1));
    CHECK(onYZ == PolyScalarField::constant(-1.0));

    // On the slant face x + y + z = 1, the radial field has flux 1/sqrt(3).
    const PolyScalarField onSlant = boundary_flux(radial, face(t, 0));
    CHECK(onSlant.eval({0.5, 0.25, 0.25}) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("balance residual routes") {
    const SimplicialRegion region({reference_tet()});

    // div u = 3 exactly balances the source 3.
    const BalanceSystem balanced{identity_field(), {}, PolyScalarField::constant(3.0)};
    const BalanceResidual r1 = balance_residual(balanced, region);
    CHECK(r1.pointwise.isZero());
    CHECK(std::abs(r1.integral) <= 1e-12);
    CHECK(r1.volumeIntegral == 0.0);

    // Pure density rate: the residual integral is the region volume.
    const BalanceSystem rateOnly{{}, PolyScalarField::constant(1.0), {}};
    const BalanceResidual r2 = balance_residual(rateOnly, region);
    CHECK(r2.integral == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(r2.volumeIntegral == doctest::Approx(1.0 / 6.0).epsilon(1e-13));

    const BalanceSystem unbalanced{{{x(), {}, {}}}, {}, {}};
    const BalanceResidual r3 = balance_residual(unbalanced, region);
    CHECK(r3.pointwise == PolyScalarField::constant(1.0));
    CHECK(r3.integral == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("variational power worked value") {
    const BalanceSystem sys{{{x(), {}, {}}}, {}, PolyScalarField::constant(1.0)};
    const SimplicialRegion region({reference_tet()});
    const VariationalPower vp = variational_power(sys, x(), region);
    CHECK(vp.lhs == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(vp.rhs == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("variational power with phi = 1 recovers the integral balance") {
    oracle::Rng rng(193);
    for (int c = 0; c < 20; ++c) {
        const BalanceSystem sys{oracle::random_vector_poly(rng, 3), oracle::random_poly(rng, 3),
                                oracle::random_poly(rng, 3)};
        const SimplicialRegion region({oracle::random_tet(rng)});
        const VariationalPower vp =
            variational_power(sys, PolyScalarField::constant(1.0), region);
        const BalanceResidual res = balance_residual(sys, region);
        CHECK(vp.lhs - vp.rhs == doctest::Approx(res.integral).epsilon(1e-11).scale(1.0));
    }

    const BalanceSystem empty{{}, {}, {}};
    const VariationalPower vp =
        variational_power(empty, oracle::random_poly(rng, 3), SimplicialRegion({reference_tet()}));
    CHECK(vp.lhs == 0.0);
    CHECK(vp.rhs == 0.0);
}

TEST_CASE("manufactured balanced systems satisfy the variational identity") {
    oracle::Rng rng(197);
    for (int c = 0; c < 50; ++c) {
        const PolyVectorField u = oracle::random_vector_poly(rng, 3);
        const PolyScalarField beta = oracle::random_poly(rng, 3);
        const BalanceSystem sys{u, beta, u.divergence() + beta};
        const PolyScalarField phi = oracle::random_poly(rng, 3);
        const SimplicialRegion region({oracle::random_tet(rng)});
        const VariationalPower vp = variational_power(sys, phi, region);
        CHECK(std::abs(vp.lhs - vp.rhs) <= 1e-10 * (1.0 + std::abs(vp.lhs)));
    }
}

TEST_CASE("interior faces cancel in multi-tet regions") {
    // Two cells sharing the slant face of the reference tet: the shared-face
    // fluxes appear twice with opposite normals.
    const Tet a = reference_tet();
    const Tet b(Point3{2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0}, Point3{1, 0, 0}, Point3{0, 1, 0},
                Point3{0, 0, 1});
    const SimplicialRegion region({a, b});
    oracle::Rng rng(199);
    const PolyVectorField u = oracle::random_vector_poly(rng, 3);
    const BalanceSystem sys{u, {}, u.divergence()};
    const BalanceResidual res = balance_residual(sys, region);
    CHECK(std::abs(res.integral) <= 1e-12);
    CHECK(res.volumeIntegral == 0.0);
}

TEST_CASE("hyperflux evaluation reduces to the classical terms") {
    oracle::Rng rng(211);
    const Tet t = reference_tet();
    const PolyScalarField s = oracle::random_poly(rng, 2);
    const PolyScalarField phi = oracle::random_poly(rng, 3);

    // Order 0 with density s recovers the source power.
    MultipoleDistribution m0(0);
    m0.addPatch(DensityPatch(t, 0, {s}));
    CHECK(hyperflux_evaluate(Hyperflux(m0), phi) ==
          doctest::Approx(integrate_tet(s * phi, t)).epsilon(1e-12));

    // Order 1 with density u recovers the flux power.
    const PolyVectorField u = oracle::random_vector_poly(rng, 2);
    MultipoleDistribution m1(1);
    m1.addPatch(DensityPatch(t, 1, {u.comp[0], u.comp[1], u.comp[2]}));
    CHECK(hyperflux_evaluate(Hyperflux(m1), phi) ==
          doctest::Approx(integrate_tet(dot(u, gradient(phi)), t)).epsilon(1e-12));

    // A single order-2 atom contracts against the second derivatives.
    CoeffTensor s2(2);
    s2.set({0, 2}, -2.0);
    MultipoleDistribution m2(2);
    m2.addAtom(PointAtom({0.4, 0.1, 0.2}, s2));
    CHECK(hyperflux_evaluate(Hyperflux(m2), x() * z()) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("moving dipole hyperflux: atom strengths and power equivalence") {
    MultipoleDistribution Q(1);
    Q.addAtom(PointAtom({0.2, 0.5, -0.1}, CoeffTensor(1, {1.0, 0.0, 0.0})));
    const PolyVectorField v = constant_vector_field({0, 0, 2});

    const Hyperflux flux = moving_dipole_hyperflux(Q, v);
    REQUIRE(flux.measures().atoms().size() == 1);
    // s^{13} = -v^3 q^1 = -2; everything else vanishes.
    const CoeffTensor& s = flux.measures().atoms()[0].strength;
    CHECK(s.at({0, 2}) == -2.0);
    for (int m = 0; m < 9; ++m) {
        if (m != CoeffTensor::flatten({0, 2})) CHECK(s.flat(m) == 0.0);
    }
    const double viaFlux = hyperflux_evaluate(flux, x() * z());
    CHECK(viaFlux == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(viaFlux == doctest::Approx(power(Q, x() * z(), v)).epsilon(1e-14));

    // v = 0 produces the zero hyperflux.
    oracle::Rng rng(223);
    const Hyperflux none = moving_dipole_hyperflux(Q, constant_vector_field({0, 0, 0}));
    CHECK(hyperflux_evaluate(none, oracle::random_poly(rng, 3)) == 0.0);
}

TEST_CASE("moving dipole patch: flux density and its edge analysis") {
    const Tet t = reference_tet();
    MultipoleDistribution Q(1);
    Q.addPatch(DensityPatch(t, 1, {PolyScalarField::constant(1.0), {}, {}}));
    const PolyVectorField v = constant_vector_field({0, 0, 1});

    const Hyperflux flux = moving_dipole_hyperflux(Q, v);
    REQUIRE(flux.measures().patches().size() == 1);
    const DensityPatch& patch = flux.measures().patches()[0];
    // s^{13} = -v^3 rho^1 = -1.
    CHECK(patch.component(2) == PolyScalarField::constant(-1.0));

    // Its quadrupole-form edge analysis: the flux density concentrates a line
    // flux of -1 on the (3,1) edge; the positive identification flips it.
    CHECK(edge_line_density(patch, 3, 1).eval({0, 0.5, 0}) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    const Hyperflux positive = moving_dipole_rearrangement(Q, v);
    CHECK(edge_line_density(positive.measures().patches()[0], 3, 1).eval({0, 0.5, 0}) ==
          doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(moving_dipole_hyperflux(MultipoleDistribution(0), v),
                    std::invalid_argument);
}

TEST_CASE("moving dipole hyperflux equals the power functional on random data") {
    oracle::Rng rng(227);
    for (int c = 0; c < 50; ++c) {
        MultipoleDistribution Q(1);
        CoeffTensor s(1);
        for (int m = 0; m < 3; ++m) s.setFlat(m, oracle::uniform(rng, -1.0, 1.0));
        Q.addAtom(PointAtom(oracle::random_point(rng), s));
        Q.addPatch(DensityPatch(oracle::random_tet(rng), 1,
                                {oracle::random_poly(rng, 2), oracle::random_poly(rng, 2),
                                 oracle::random_poly(rng, 2)}));
        const PolyVectorField v = oracle::random_vector_poly(rng, 2);
        const PolyScalarField phi = oracle::random_poly(rng, 3);
        const double viaFlux = hyperflux_evaluate(moving_dipole_hyperflux(Q, v), phi);
        const double viaPower = power(Q, phi, v);
        CHECK(std::abs(viaFlux - viaPower) <= 1e-10 * (1.0 + std::abs(viaPower)));
    }
}

TEST_CASE("hyperflux evaluation is linear and additive over disjoint regions") {
    oracle::Rng rng(229);
    for (int c = 0; c < 20; ++c) {
        const Tet t1 = oracle::random_tet(rng);
        const auto shifted = [&](int i) { return t1.vertex(i) + Vec3{5, 5, 5}; };
        const Tet t2(shifted(0), shifted(1), shifted(2), shifted(3));
        MultipoleDistribution m(2);
        std::vector<PolyScalarField> d1, d2;
        for (int i = 0; i < 3; ++i) d1.push_back(oracle::random_poly(rng, 2));
        for (int i = 0; i < 9; ++i) d2.push_back(oracle::random_poly(rng, 1));
        m.addPatch(DensityPatch(t1, 1, std::move(d1)));
        m.addPatch(DensityPatch(t2, 2, std::move(d2)));
        const Hyperflux flux(m);

        const PolyScalarField phi = oracle::random_poly(rng, 3);
        const PolyScalarField psi = oracle::random_poly(rng, 3);
        const double lin = hyperflux_evaluate(flux, phi * 2.0 - psi * 0.5);
        const double parts =
            2.0 * hyperflux_evaluate(flux, phi) - 0.5 * hyperflux_evaluate(flux, psi);
        CHECK(std::abs(lin - parts) <= 1e-12 * (1.0 + std::abs(lin)));

        const SimplicialRegion r1({t1}), r2({t2}), both({t1, t2});
        const double split =
            hyperflux_evaluate(flux, phi, r1) + hyperflux_evaluate(flux, phi, r2);
        CHECK(std::abs(split - hyperflux_evaluate(flux, phi, both)) <=
              1e-12 * (1.0 + std::abs(split)));
    }
}

TEST_CASE("energy rate split") {
    MultipoleDistribution Q(0);
    Q.addAtom(PointAtom({1, 0, 0}, CoeffTensor(0, {1.0})));
    MultipoleDistribution QDot(0);
    QDot.addAtom(PointAtom({1, 0, 0}, CoeffTensor(0, {2.0})));

    const EnergyRateSplit split = energy_rate_split(x(), y(), Q, QDot);
    CHECK(split.potentialVariation == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(split.rearrangement == doctest::Approx(2.0).epsilon(1e-15));

    // Central-difference cross-check of d/dt [(Q + t QDot)(phi + t phiDot)].
    const auto total = [&](double t) {
        MultipoleDistribution Qt(0);
        Qt.addAtom(PointAtom({1, 0, 0}, CoeffTensor(0, {1.0 + 2.0 * t})));
        return evaluate(Qt, x() + y() * t);
    };
    const double h = 1e-4;
    const double rate = (total(h) - total(-h)) / (2.0 * h);
    CHECK(split.potentialVariation + split.rearrangement ==
          doctest::Approx(rate).epsilon(1e-9));

    // phiDot = 0 and QDot = 0 kill the respective halves; the zero QDot must
    // still mirror Q's structure.
    CHECK(energy_rate_split(x(), {}, Q, QDot).potentialVariation == 0.0);
    MultipoleDistribution zeroDot(0);
    zeroDot.addAtom(PointAtom({1, 0, 0}, CoeffTensor(0)));
    CHECK(energy_rate_split(x(), y(), Q, zeroDot).rearrangement == 0.0);
}

TEST_CASE("energy rate split rejects structural mismatches") {
    MultipoleDistribution Q(0);
    Q.addAtom(PointAtom({1, 0, 0}, CoeffTensor(0, {1.0})));
    MultipoleDistribution moved(0);
    moved.addAtom(PointAtom({0, 1, 0}, CoeffTensor(0, {1.0})));
    CHECK_THROWS_AS(energy_rate_split(x(), y(), Q, moved), std::invalid_argument);

    MultipoleDistribution higher(1);
    higher.addAtom(PointAtom({1, 0, 0}, CoeffTensor(1)));
    CHECK_THROWS_AS(energy_rate_split(x(), y(), Q, higher), std::invalid_argument);
}
