#pragma once

#include <optional>

#include "mpd/multipole.hpp"

namespace mpd {

/// The classical (u, beta, s) triple of a scalar-property balance.  beta is a
/// static field standing for the time rate of the density; no time integration
/// happens here.  The boundary flux tau is always derived as u.nu, never an
/// independent input.
struct BalanceSystem {
    PolyVectorField fluxField;    // u
    PolyScalarField densityRate;  // beta
    PolyScalarField source;       // s

    friend bool operator==(const BalanceSystem&, const BalanceSystem&) = default;
};

/// tau = u . nu^a restricted to the face.
PolyScalarField boundary_flux(const BalanceSystem& sys, const OrientedFace& face);

struct BalanceResidual {
    PolyScalarField pointwise;   // u^i_{,i} + beta - s
    double integral = 0.0;       // boundary route: tau over faces + beta - s over cells
    double volumeIntegral = 0.0; // volume route: pointwise residual over cells
};

/// Both routes agree by the divergence theorem; interior faces of a multi-tet
/// region cancel numerically in the boundary route.
BalanceResidual balance_residual(const BalanceSystem& sys, const SimplicialRegion& region);

struct VariationalPower {
    double lhs = 0.0;  // tau phi over faces + beta phi over cells
    double rhs = 0.0;  // s phi + u^i phi_{,i} over cells
};

/// lhs equals rhs when the pointwise residual vanishes; otherwise the gap is
/// the residual integrated against phi.  phi = 1 reproduces balance_residual's
/// integral form.
VariationalPower variational_power(const BalanceSystem& sys, const PolyScalarField& phi,
                                   const SimplicialRegion& region);

/// An order-r flux functional: same measure structure as a multipole
/// distribution, different semantics — the potential is held fixed and the
/// value is the power expended rearranging the property.
class Hyperflux {
public:
    explicit Hyperflux(MultipoleDistribution measures) : measures_(std::move(measures)) {}

    const MultipoleDistribution& measures() const { return measures_; }
    int order() const { return measures_.order(); }

    friend bool operator==(const Hyperflux&, const Hyperflux&) = default;

private:
    MultipoleDistribution measures_;
};

double hyperflux_evaluate(const Hyperflux& flux, const PolyScalarField& phi,
                          const std::optional<SimplicialRegion>& B = std::nullopt);

/// The order-2 hyperflux of a moving dipole component: s^{ij} = -v^j q^i for
/// atoms and -v^j rho^i for patch densities, so that hyperflux_evaluate equals
/// the power functional of the k=1 component directly.
Hyperflux moving_dipole_hyperflux(const MultipoleDistribution& Q, const PolyVectorField& v);

/// The positive identification s^{ij} = rho^i v^j, under which the hyperflux
/// takes the quadrupole form (and equals minus the power).  Kept alongside the
/// negative convention because the two appear with opposite signs in the
/// source derivations; callers pick explicitly.
Hyperflux moving_dipole_rearrangement(const MultipoleDistribution& Q, const PolyVectorField& v);

struct EnergyRateSplit {
    double potentialVariation = 0.0;  // Q(phi-dot)
    double rearrangement = 0.0;       // Q-dot(phi)
};

/// Splits d/dt [ (Q + t Q-dot)(phi + t phi-dot) ] at t = 0 into the power
/// needed to vary the potential and the power needed to rearrange the
/// property.  Q-dot must share Q's structure: same atom locations and orders,
/// same patch supports and orders, in the same order.
EnergyRateSplit energy_rate_split(const PolyScalarField& phi, const PolyScalarField& phiDot,
                                  const MultipoleDistribution& Q,
                                  const MultipoleDistribution& QDot);

}  // namespace mpd
