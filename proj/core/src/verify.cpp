#include "mpd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "mpd/bound.hpp"
#include "mpd/flux.hpp"
#include "mpd/mechanics.hpp"
#include "mpd/multipole.hpp"

namespace mpd {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Point3 random_point(Rng& rng, double halfWidth = 1.0) {
    return {uniform(rng, -halfWidth, halfWidth), uniform(rng, -halfWidth, halfWidth),
            uniform(rng, -halfWidth, halfWidth)};
}

/// Well-conditioned random tet: |V| >= 5e-3 L^3 keeps face and conormal
/// constructions far from the degeneracy threshold.
Tet random_tet(Rng& rng) {
    for (;;) {
        const std::array<Point3, 4> v = {random_point(rng), random_point(rng), random_point(rng),
                                         random_point(rng)};
        double longest = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                longest = std::max(longest, norm(v[static_cast<std::size_t>(j)] -
                                                 v[static_cast<std::size_t>(i)]));
            }
        }
        if (std::abs(signed_volume(v)) >= 5e-3 * longest * longest * longest) return Tet(v);
    }
}

Tet reference_tet() {
    return Tet(Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1});
}

PolyScalarField random_poly(Rng& rng, int maxDegree) {
    PolyScalarField f;
    for (int e0 = 0; e0 <= maxDegree; ++e0) {
        for (int e1 = 0; e1 + e0 <= maxDegree; ++e1) {
            for (int e2 = 0; e2 + e1 + e0 <= maxDegree; ++e2) {
                f.addTerm({{e0, e1, e2}}, uniform(rng, -1.0, 1.0));
            }
        }
    }
    return f;
}

PolyVectorField random_vector_poly(Rng& rng, int maxDegree) {
    return {{random_poly(rng, maxDegree), random_poly(rng, maxDegree),
             random_poly(rng, maxDegree)}};
}

std::vector<PolyScalarField> random_components(Rng& rng, int count, int maxDegree) {
    std::vector<PolyScalarField> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(random_poly(rng, maxDegree));
    return out;
}

/// Two tets sharing face 0 of the first, with disjoint interiors: the fourth
/// vertex of the second is the reflection of x0 across the shared face plane.
SimplicialRegion adjacent_pair(Rng& rng) {
    for (;;) {
        const Tet first = random_tet(rng);
        const OrientedFace shared = face(first, 0);
        const Vec3& nu = shared.unitNormal;
        const Point3& x0 = first.vertex(0);
        const double dist = dot(shared.vertices[0] - x0, nu);
        const Point3 mirrored = x0 + nu * (2.0 * dist);
        const std::array<Point3, 4> w = {mirrored, first.vertex(1), first.vertex(2),
                                         first.vertex(3)};
        double longest = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                longest = std::max(longest, norm(w[static_cast<std::size_t>(j)] -
                                                 w[static_cast<std::size_t>(i)]));
            }
        }
        if (std::abs(signed_volume(w)) < 5e-3 * longest * longest * longest) continue;
        return SimplicialRegion({first, Tet(w)});
    }
}

struct Worst {
    double residual = 0.0;
    void track(double r) { residual = std::max(residual, r); }
};

int scaled_cases(int base, const VerifyOptions& o) {
    return std::max(1, static_cast<int>(std::lround(base * static_cast<double>(o.cases) / 200.0)));
}

double scaled_tol(double base, const VerifyOptions& o) { return base * (o.tolerance / 1e-9); }

SuiteResult finish(SuiteResult r, const Clock::time_point& start) {
    r.millis = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    r.pass = r.pass && r.maxResidual <= r.tolerance;
    return r;
}

SuiteResult suite_dipole_identity(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"dipole_decomposition_identity", scaled_cases(200, o), 0.0,
                  scaled_tol(1e-9, o), true, 0.0, ""};
    Rng rng(o.seed + 1);
    Worst worst;
    for (int c = 0; c < r.cases; ++c) {
        const Tet t = random_tet(rng);
        const DensityPatch rho(t, 1, random_components(rng, 3, 2));
        const PolyScalarField phi = random_poly(rng, 3);
        MultipoleDistribution Q(1);
        Q.addPatch(rho);
        const double direct = evaluate(Q, phi);
        const double decomposed = evaluate_dipole_bound(bound_dipole(rho), phi);
        worst.track(std::abs(direct - decomposed) / (1.0 + std::abs(direct)));
    }
    r.maxResidual = worst.residual;
    return finish(r, start);
}

SuiteResult suite_quadrupole_identity(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"quadrupole_simplex_identity", scaled_cases(200, o), 0.0, scaled_tol(1e-9, o),
                  true, 0.0, ""};
    Rng rng(o.seed + 2);
    Worst worst;
    for (int c = 0; c < r.cases; ++c) {
        const Tet t = random_tet(rng);
        const DensityPatch rho(t, 2, random_components(rng, 9, 2));
        const PolyScalarField phi = random_poly(rng, 4);
        MultipoleDistribution Q(2);
        Q.addPatch(rho);
        const double direct = evaluate(Q, phi);
        const double decomposed = evaluate_quad_bound(bound_quadrupole(rho), phi);
        worst.track(std::abs(direct - decomposed) / (1.0 + std::abs(direct)));
    }
    // Edge-term necessity: rho^{13} = 1 on the reference tet with phi = y.
    // Dropping the edge sum must move the decomposed value by at least 1e-3.
    {
        std::vector<PolyScalarField> comps(9);
        comps[2] = PolyScalarField::constant(1.0);  // (i,j) = (1,3) -> flat 0*3+2
        const DensityPatch rho(reference_tet(), 2, std::move(comps));
        const PolyScalarField phi = PolyScalarField::variable(1);
        const QuadBoundTerms terms =
            evaluate_quad_bound_terms(bound_quadrupole(rho), phi);
        MultipoleDistribution Q(2);
        Q.addPatch(rho);
        const double direct = evaluate(Q, phi);
        worst.track(std::abs(direct - terms.total()) / (1.0 + std::abs(direct)));
        const double edgeChange = std::abs(terms.edgeLine);
        std::ostringstream note;
        note << "edge-term necessity margin = " << edgeChange;
        r.note = note.str();
        if (edgeChange < 1e-3) r.pass = false;
    }
    r.maxResidual = worst.residual;
    return finish(r, start);
}

SuiteResult suite_zero_net_charge(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"quadrupole_zero_net_charge", scaled_cases(100, o), 0.0, scaled_tol(1e-10, o),
                  true, 0.0, ""};
    Rng rng(o.seed + 3);
    Worst worst;
    const PolyScalarField one = PolyScalarField::constant(1.0);
    for (int c = 0; c < r.cases; ++c) {
        const Tet t = random_tet(rng);
        const DensityPatch rho(t, 2, random_components(rng, 9, 2));
        worst.track(std::abs(evaluate_quad_bound(bound_quadrupole(rho), one)));
    }
    r.maxResidual = worst.residual;
    return finish(r, start);
}

SuiteResult suite_power_energy_rate(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"power_vs_energy_rate", scaled_cases(100, o), 0.0, scaled_tol(1e-11, o), true,
                  0.0, ""};
    Rng rng(o.seed + 4);
    Worst worst;
    std::ostringstream orders;
    for (int c = 0; c < r.cases; ++c) {
        MultipoleDistribution Q(2);
        for (int k = 0; k <= 2; ++k) {
            CoeffTensor s(k);
            for (int m = 0; m < s.size(); ++m) s.setFlat(m, uniform(rng, -1.0, 1.0));
            Q.addAtom(PointAtom(random_point(rng), s));
        }
        Q.addPatch(DensityPatch(random_tet(rng), 1, random_components(rng, 3, 1)));
        // A strong cubic term keeps U'''(0) away from zero so the measured
        // order of the central difference is meaningful.
        PolyScalarField phi = random_poly(rng, 4);
        phi.addTerm({{3, 0, 0}}, 1.0 + uniform(rng, 0.0, 1.0));
        const Vec3 vConst = {uniform(rng, 0.5, 1.5) * (rng() % 2 ? 1.0 : -1.0),
                             uniform(rng, 0.5, 1.5) * (rng() % 2 ? 1.0 : -1.0),
                             uniform(rng, 0.5, 1.5) * (rng() % 2 ? 1.0 : -1.0)};
        const PolyVectorField v = constant_vector_field(vConst);

        // Exact symbolic rate: dU/dt|_0 = Q(grad phi . v).
        const double symbolicRate = evaluate(Q, dot(gradient(phi), v));
        const double P = power(Q, phi, v);
        worst.track(std::abs(P + symbolicRate) / (1.0 + std::abs(symbolicRate)));

        const double floor = 1e-11 * (1.0 + std::abs(P));
        double err[3];
        const double hs[3] = {1e-2, 1e-3, 1e-4};
        for (int i = 0; i < 3; ++i) {
            err[i] = energy_rate_check(Q, phi, v, hs[i]).discrepancy;
        }
        const auto order_ok = [&](double e1, double e2) {
            if (e2 <= floor) return true;  // central difference hit rounding
            const double p = std::log10(e1 / e2);
            return p >= 1.7 && p <= 2.3;
        };
        if (!order_ok(err[0], err[1])) r.pass = false;
        if (!order_ok(err[1], err[2])) r.pass = false;
        if (c == 0) {
            orders << "first-case orders: " << std::log10(err[0] / std::max(err[1], 1e-300))
                   << ", " << std::log10(err[1] / std::max(err[2], 1e-300));
            r.note = orders.str();
        }
    }
    r.maxResidual = worst.residual;
    return finish(r, start);
}

SuiteResult suite_divergence(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"divergence_theorem", scaled_cases(200, o), 0.0, scaled_tol(1e-10, o), true,
                  0.0, ""};
    Rng rng(o.seed + 5);
    Worst worst;
    for (int c = 0; c < r.cases; ++c) {
        const Tet t = random_tet(rng);
        const PolyVectorField w = random_vector_poly(rng, 5);
        const double volumeSide = integrate_tet(w.divergence(), t);
        double surfaceSide = 0.0;
        for (int a = 0; a < 4; ++a) {
            const OrientedFace f = face(t, a);
            surfaceSide += integrate_face(dot(w, f.unitNormal), f);
        }
        worst.track(std::abs(volumeSide - surfaceSide) / (1.0 + std::abs(volumeSide)));

        // Per-face surface divergence theorem with the in-face conormals.
        const int a = static_cast<int>(rng() % 4);
        const OrientedFace f = face(t, a);
        const PolyVectorField gt = tangential_projection(random_vector_poly(rng, 5), f);
        const double lhs = integrate_face(surface_divergence(gt, f), f);
        double rhs = 0.0;
        for (int b = 0; b < 4; ++b) {
            if (b == a) continue;
            const OrientedEdge e = edge_conormals(t, a, b);
            rhs += integrate_edge(dot(gt, e.conormalInA), e);
        }
        worst.track(std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    r.maxResidual = worst.residual;
    return finish(r, start);
}

SuiteResult suite_variational(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"variational_balance", scaled_cases(100, o), 0.0, scaled_tol(1e-10, o), true,
                  0.0, ""};
    Rng rng(o.seed + 6);
    Worst worst;
    for (int c = 0; c < r.cases; ++c) {
        const PolyVectorField u = random_vector_poly(rng, 3);
        const PolyScalarField beta = random_poly(rng, 3);
        const BalanceSystem sys{u, beta, u.divergence() + beta};  // manufactured balance
        const PolyScalarField phi = random_poly(rng, 3);
        const SimplicialRegion region =
            (c % 10 == 9) ? adjacent_pair(rng) : SimplicialRegion({random_tet(rng)});
        const VariationalPower vp = variational_power(sys, phi, region);
        worst.track(std::abs(vp.lhs - vp.rhs) / (1.0 + std::abs(vp.lhs)));
    }
    // Worked value: u = (x,0,0), s = 1, beta = 0, phi = x on the reference tet.
    {
        const BalanceSystem sys{{{PolyScalarField::variable(0), {}, {}}},
                                {},
                                PolyScalarField::constant(1.0)};
        const SimplicialRegion region({reference_tet()});
        const VariationalPower vp =
            variational_power(sys, PolyScalarField::variable(0), region);
        const double expected = 1.0 / 12.0;
        if (std::abs(vp.lhs - expected) > 1e-12 || std::abs(vp.rhs - expected) > 1e-12) {
            r.pass = false;
        }
        std::ostringstream note;
        note << "worked value lhs = " << vp.lhs << ", rhs = " << vp.rhs << " (expect 1/12)";
        r.note = note.str();
    }
    r.maxResidual = worst.residual;
    return finish(r, start);
}

SuiteResult suite_moving_dipole(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"moving_dipole_hyperflux", scaled_cases(100, o), 0.0, scaled_tol(1e-10, o),
                  true, 0.0, ""};
    Rng rng(o.seed + 7);
    Worst worst;
    for (int c = 0; c < r.cases; ++c) {
        MultipoleDistribution Q(1);
        for (int n = 0; n < 2; ++n) {
            CoeffTensor s(1);
            for (int m = 0; m < 3; ++m) s.setFlat(m, uniform(rng, -1.0, 1.0));
            Q.addAtom(PointAtom(random_point(rng), s));
        }
        Q.addPatch(DensityPatch(random_tet(rng), 1, random_components(rng, 3, 2)));
        const PolyVectorField v = random_vector_poly(rng, 2);  // non-constant
        const PolyScalarField phi = random_poly(rng, 3);
        const double viaFlux = hyperflux_evaluate(moving_dipole_hyperflux(Q, v), phi);
        const double viaPower = power(Q.componentOfOrder(1), phi, v);
        worst.track(std::abs(viaFlux - viaPower) / (1.0 + std::abs(viaPower)));
    }
    r.maxResidual = worst.residual;
    return finish(r, start);
}

SuiteResult suite_symmetrization(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"symmetrization_invariance", scaled_cases(100, o), 0.0, scaled_tol(1e-12, o),
                  true, 0.0, ""};
    Rng rng(o.seed + 8);
    Worst worst;
    double worstAntisym = 0.0;
    for (int c = 0; c < r.cases; ++c) {
        MultipoleDistribution Q(2);
        for (int k = 0; k <= 2; ++k) {
            CoeffTensor s(k);
            for (int m = 0; m < s.size(); ++m) s.setFlat(m, uniform(rng, -1.0, 1.0));
            Q.addAtom(PointAtom(random_point(rng), s));
        }
        Q.addPatch(DensityPatch(random_tet(rng), 2, random_components(rng, 9, 2)));
        const PolyScalarField phi = random_poly(rng, 4);
        const double direct = evaluate(Q, phi);
        const double sym = evaluate(symmetrize(Q), phi);
        worst.track(std::abs(direct - sym) / (1.0 + std::abs(direct)));

        // Purely antisymmetric order-2 component: zero directly and through
        // the bound-charge decomposition.
        const PolyScalarField g = random_poly(rng, 2);
        std::vector<PolyScalarField> anti(9);
        anti[1] = g;        // (1,2)
        anti[3] = -g;       // (2,1)
        const DensityPatch antiPatch(random_tet(rng), 2, std::move(anti));
        MultipoleDistribution antiQ(2);
        antiQ.addPatch(antiPatch);
        worstAntisym = std::max(worstAntisym, std::abs(evaluate(antiQ, phi)));
        worstAntisym = std::max(
            worstAntisym, std::abs(evaluate_quad_bound(bound_quadrupole(antiPatch), phi)));
    }
    if (worstAntisym > scaled_tol(1e-10, o)) r.pass = false;
    std::ostringstream note;
    note << "antisymmetric-null worst = " << worstAntisym;
    r.note = note.str();
    r.maxResidual = worst.residual;
    return finish(r, start);
}

SuiteResult suite_promotion(const VerifyOptions& o) {
    const auto start = Clock::now();
    SuiteResult r{"k_order_promotion", scaled_cases(99, o), 0.0, scaled_tol(1e-12, o), true, 0.0,
                  ""};
    Rng rng(o.seed + 9);
    Worst worst;
    for (int c = 0; c < r.cases; ++c) {
        const int k = c % 3;
        CoeffTensor strength(k);
        for (int m = 0; m < strength.size(); ++m) strength.setFlat(m, uniform(rng, -1.0, 1.0));
        const Point3 loc = random_point(rng);
        const Vec3 vConst = random_point(rng);
        const PolyScalarField phi = random_poly(rng, 4);

        MultipoleDistribution Qk(k);
        Qk.addAtom(PointAtom(loc, strength));
        const double P = power(Qk, phi, constant_vector_field(vConst));

        MultipoleDistribution Qk1(k + 1);
        Qk1.addAtom(PointAtom(loc, outer_append(strength, -vConst)));
        const double E = evaluate(Qk1, phi);
        worst.track(std::abs(P - E) / (1.0 + std::abs(E)));
    }
    r.maxResidual = worst.residual;
    return finish(r, start);
}

}  // namespace

std::vector<SuiteResult> run_builtin_suites(const VerifyOptions& options) {
    return {
        suite_dipole_identity(options),   suite_quadrupole_identity(options),
        suite_zero_net_charge(options),   suite_power_energy_rate(options),
        suite_divergence(options),        suite_variational(options),
        suite_moving_dipole(options),     suite_symmetrization(options),
        suite_promotion(options),
    };
}

bool all_passed(const std::vector<SuiteResult>& results) {
    for (const auto& r : results) {
        if (!r.pass) return false;
    }
    return true;
}

}  // namespace mpd
