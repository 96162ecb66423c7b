#include "mpd/bound.hpp"

#include <cmath>
#include <stdexcept>

#include "tensor_ops.hpp"

namespace mpd {

using detail::contract_second_index;
using detail::divergence_second_index;

namespace {

void require_order(const DensityPatch& rho, int k, const char* what) {
    if (rho.order != k) {
        throw std::invalid_argument(std::string(what) + ": density patch has wrong order");
    }
}

}  // namespace

DipoleBound bound_dipole(const DensityPatch& rho) {
    require_order(rho, 1, "bound_dipole");
    const PolyVectorField p{{rho.component(0), rho.component(1), rho.component(2)}};
    DipoleBound out{rho.support,
                    {face(rho.support, 0), face(rho.support, 1), face(rho.support, 2),
                     face(rho.support, 3)},
                    {},
                    -p.divergence()};
    for (int a = 0; a < 4; ++a) {
        out.surfaceCharge[static_cast<std::size_t>(a)] =
            dot(p, out.faces[static_cast<std::size_t>(a)].unitNormal);
    }
    return out;
}

double evaluate_dipole_bound(const DipoleBound& d, const PolyScalarField& phi) {
    double total = integrate_tet(d.volumeCharge * phi, d.support);
    for (int a = 0; a < 4; ++a) {
        total += integrate_face(d.surfaceCharge[static_cast<std::size_t>(a)] * phi,
                                d.faces[static_cast<std::size_t>(a)]);
    }
    return total;
}

PolyScalarField edge_line_density(const DensityPatch& rho, int a, int b) {
    require_order(rho, 2, "edge_line_density");
    if (a <= b) throw std::invalid_argument("edge_line_density: requires a > b");
    const OrientedEdge e = edge_conormals(rho.support, a, b);
    const OrientedFace fa = face(rho.support, a);
    const OrientedFace fb = face(rho.support, b);
    const PolyVectorField rhoA = contract_second_index(rho, fa.unitNormal);
    const PolyVectorField rhoB = contract_second_index(rho, fb.unitNormal);
    const PolyVectorField rhoAt = tangential_projection(rhoA, fa);
    const PolyVectorField rhoBt = tangential_projection(rhoB, fb);

    // Both adjacent faces push their tangential dipole flux out through the
    // shared edge, so the contributions add.
    const PolyScalarField tangentialForm = dot(rhoAt, e.conormalInA) + dot(rhoBt, e.conormalInB);
    // Same quantity from the unprojected rho_a, rho_b: mu_ab . nu^a = 0.
    const PolyScalarField fullForm = dot(rhoA, e.conormalInA) + dot(rhoB, e.conormalInB);

    const PolyScalarField diff = tangentialForm - fullForm;
    double maxCoeff = 0.0, maxDiff = 0.0;
    for (const auto& [m, c] : tangentialForm.terms()) maxCoeff = std::max(maxCoeff, std::abs(c));
    for (const auto& [m, c] : diff.terms()) maxDiff = std::max(maxDiff, std::abs(c));
    if (maxDiff > 1e-12 * (1.0 + maxCoeff)) {
        throw std::logic_error("edge_line_density: tangential and full forms disagree");
    }
    return tangentialForm;
}

QuadBound bound_quadrupole(const DensityPatch& rho) {
    require_order(rho, 2, "bound_quadrupole");
    QuadBound out{rho.support,
                  {},
                  {},
                  {}};

    PolyScalarField volumeCharge;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            volumeCharge += rho.component(i * 3 + j).partial(i).partial(j);
        }
    }
    out.volumeCharge = volumeCharge;

    const PolyVectorField divRho = divergence_second_index(rho);
    for (int a = 0; a < 4; ++a) {
        QuadBoundFace& fc = out.faces[static_cast<std::size_t>(a)];
        fc.face = face(rho.support, a);
        fc.rhoBoundary = contract_second_index(rho, fc.face.unitNormal);
        fc.normalDipole = dot(fc.rhoBoundary, fc.face.unitNormal);
        const Vec3& nu = fc.face.unitNormal;
        fc.rhoBoundaryNormal = {{fc.normalDipole * nu.x, fc.normalDipole * nu.y,
                                 fc.normalDipole * nu.z}};
        fc.rhoBoundaryTangent = tangential_projection(fc.rhoBoundary, fc.face);
        fc.surfaceCharge =
            -surface_divergence(fc.rhoBoundaryTangent, fc.face) - dot(divRho, nu);
    }

    for (int a = 1; a < 4; ++a) {
        for (int b = 0; b < a; ++b) {
            out.edges.push_back(
                {edge_conormals(rho.support, a, b), edge_line_density(rho, a, b)});
        }
    }
    return out;
}

QuadBoundTerms evaluate_quad_bound_terms(const QuadBound& d, const PolyScalarField& phi) {
    QuadBoundTerms terms;
    for (const auto& fc : d.faces) {
        terms.surfaceCharge += integrate_face(fc.surfaceCharge * phi, fc.face);
        terms.normalDipole += integrate_face(fc.normalDipole * normal_derivative(phi, fc.face),
                                             fc.face);
    }
    terms.volumeCharge = integrate_tet(d.volumeCharge * phi, d.support);
    for (const auto& ed : d.edges) {
        terms.edgeLine += integrate_edge(ed.lineDensity * phi, ed.edge);
    }
    return terms;
}

double evaluate_quad_bound(const QuadBound& d, const PolyScalarField& phi) {
    return evaluate_quad_bound_terms(d, phi).total();
}

}  // namespace mpd
