#pragma once

#include <array>
#include <vector>

#include "mpd/integrate.hpp"
#include "mpd/multipole.hpp"

namespace mpd {

/// Bound-charge decomposition of a dipole density on a single tet: a surface
/// charge rho.nu per face and a volume charge -div rho.
struct DipoleBound {
    Tet support;
    std::array<OrientedFace, 4> faces;
    std::array<PolyScalarField, 4> surfaceCharge;  // rho . nu^a, restricted to face a
    PolyScalarField volumeCharge;                  // -rho^i_{,i}
};

DipoleBound bound_dipole(const DensityPatch& rho);  // rho must have order 1

/// Integral of the decomposition against phi; reproduces the direct value
/// integral of phi_{,i} rho^i dV.
double evaluate_dipole_bound(const DipoleBound& d, const PolyScalarField& phi);

struct QuadBoundFace {
    OrientedFace face;
    PolyVectorField rhoBoundary;         // rho_a^i = rho^{ij} nu_j
    PolyVectorField rhoBoundaryNormal;   // (rho_a . nu) nu
    PolyVectorField rhoBoundaryTangent;  // rho_at
    PolyScalarField normalDipole;        // rho_a . nu, a dipole layer density
    PolyScalarField surfaceCharge;       // -div_t rho_at - rho^{ij}_{,j} nu_i
};

struct QuadBoundEdge {
    OrientedEdge edge;            // faces (a,b), a > b
    PolyScalarField lineDensity;  // l_ab, restricted to the edge
};

/// Bound-charge decomposition of a quadrupole density on a single tet:
/// per-face surface charge and normal dipole layer, a volume charge, and a
/// line density on each of the six edges.
struct QuadBound {
    Tet support;
    std::array<QuadBoundFace, 4> faces;
    PolyScalarField volumeCharge;      // rho^{ij}_{,ij}
    std::vector<QuadBoundEdge> edges;  // the six pairs a > b
};

QuadBound bound_quadrupole(const DensityPatch& rho);  // rho must have order 2

/// Line density on the edge shared by faces a and b (a > b):
///   l_ab = rho_at . mu_ab + rho_bt . mu_ba,
/// the sum of both adjacent faces' outward tangential dipole fluxes.  Also
/// computed from the full (unprojected) rho_a, rho_b — the conormals are
/// perpendicular to the face normals, so the two forms agree; the cross-check
/// runs at construction.
PolyScalarField edge_line_density(const DensityPatch& rho, int a, int b);

struct QuadBoundTerms {
    double surfaceCharge = 0.0;  // -(div_t rho_at) phi and -rho^{ij}_{,j} nu_i phi faces
    double normalDipole = 0.0;   // rho_anu (nu . grad phi) faces
    double volumeCharge = 0.0;   // rho^{ij}_{,ij} phi
    double edgeLine = 0.0;       // sum over a>b of l_ab phi
    double total() const { return surfaceCharge + normalDipole + volumeCharge + edgeLine; }
};

QuadBoundTerms evaluate_quad_bound_terms(const QuadBound& d, const PolyScalarField& phi);
double evaluate_quad_bound(const QuadBound& d, const PolyScalarField& phi);

}  // namespace mpd
