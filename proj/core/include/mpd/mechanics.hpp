#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mpd/bound.hpp"
#include "mpd/multipole.hpp"

namespace mpd {

/// Power expended by the field on the moving distribution,
///   P_B = - sum_k  integral of phi_{,i1...ik j} v^j dq^{i1...ik},
/// with the leading minus: P is the power delivered by the field, equal to
/// minus the rate of change of the pushforward energy at t = 0.
double power(const MultipoleDistribution& Q, const PolyScalarField& phi, const PolyVectorField& v,
             const std::optional<SimplicialRegion>& B = std::nullopt);

struct EnergyRateCheck {
    double power = 0.0;                  // P from the power functional
    double centralDifferenceRate = 0.0;  // (U(h) - U(-h)) / 2h
    double discrepancy = 0.0;            // |power + rate|, O(h^2) for polynomials
};

/// Requires a spatially constant v: for varying v the printed power formula
/// and the trajectory derivative pick up extra v-gradient terms that this
/// check does not model.
EnergyRateCheck energy_rate_check(const MultipoleDistribution& Q, const PolyScalarField& phi,
                                  const PolyVectorField& v, double h);

struct ForceTerm {
    std::string name;
    double value = 0.0;
};

/// Named decomposition of the energy rate of a moving smooth density.  The
/// terms follow the worked decompositions verbatim, so total() equals the
/// energy rate U-dot = -power; `power` carries the signed power functional.
struct ForceReport {
    double power = 0.0;
    std::vector<ForceTerm> terms;
    /// sigma^i_j = phi_{,j} rho^i for the dipole case (row i, column j).
    /// Not symmetric; its skew part is a couple density acting on the
    /// angular-velocity part of the velocity gradient.
    std::optional<std::array<std::array<PolyScalarField, 3>, 3>> stress;

    double total() const;
    double term(const std::string& name) const;
};

/// Boundary, volume, and stress powers of a moving dipole density:
///   boundary  phi_{,j} rho^i nu_i v^j   over the faces
///   volume   -phi_{,j} rho^i_{,i} v^j   over the tet
///   stress   -phi_{,j} rho^i v^j_{,i}   over the tet.
ForceReport force_decompose_dipole(const DensityPatch& rho, const PolyScalarField& phi,
                                   const PolyVectorField& v);

/// Full ten-term decomposition of a moving quadrupole density, including the
/// edge force density F^L_i = phi_{,i} l_ab and the hyper-stress power
/// v^i_{,jk} phi_{,i} rho^{jk}.
ForceReport force_decompose_quadrupole(const DensityPatch& rho, const PolyScalarField& phi,
                                       const PolyVectorField& v);

}  // namespace mpd
