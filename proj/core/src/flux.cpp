#include "mpd/flux.hpp"

#include <stdexcept>

#include "mpd/integrate.hpp"

namespace mpd {

PolyScalarField boundary_flux(const BalanceSystem& sys, const OrientedFace& face) {
    return dot(sys.fluxField, face.unitNormal);
}

BalanceResidual balance_residual(const BalanceSystem& sys, const SimplicialRegion& region) {
    BalanceResidual out;
    out.pointwise = sys.fluxField.divergence() + sys.densityRate - sys.source;
    for (const auto& t : region.tets()) {
        for (int a = 0; a < 4; ++a) {
            const OrientedFace f = face(t, a);
            out.integral += integrate_face(boundary_flux(sys, f), f);
        }
        out.integral += integrate_tet(sys.densityRate - sys.source, t);
        out.volumeIntegral += integrate_tet(out.pointwise, t);
    }
    return out;
}

VariationalPower variational_power(const BalanceSystem& sys, const PolyScalarField& phi,
                                   const SimplicialRegion& region) {
    VariationalPower out;
    const PolyScalarField fluxGrad = dot(sys.fluxField, gradient(phi));
    for (const auto& t : region.tets()) {
        for (int a = 0; a < 4; ++a) {
            const OrientedFace f = face(t, a);
            out.lhs += integrate_face(boundary_flux(sys, f) * phi, f);
        }
        out.lhs += integrate_tet(sys.densityRate * phi, t);
        out.rhs += integrate_tet(sys.source * phi + fluxGrad, t);
    }
    return out;
}

double hyperflux_evaluate(const Hyperflux& flux, const PolyScalarField& phi,
                          const std::optional<SimplicialRegion>& B) {
    return evaluate(flux.measures(), phi, B);
}

namespace {

Hyperflux moving_dipole_flux_impl(const MultipoleDistribution& Q, const PolyVectorField& v,
                                  double sign) {
    if (!Q.hasComponentOfOrder(1)) {
        throw std::invalid_argument("moving dipole hyperflux: Q has no order-1 component");
    }
    if (v.degree() > kMaxFieldDegree) {
        throw std::invalid_argument("moving dipole hyperflux: degree cap (16) exceeded");
    }
    MultipoleDistribution measures(2);
    for (const auto& atom : Q.atoms()) {
        if (atom.order() != 1) continue;
        const Vec3 vAt = v.eval(atom.location);
        CoeffTensor s(2);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                s.setFlat(i * 3 + j, sign * vAt[j] * atom.strength.flat(i));
            }
        }
        measures.addAtom(PointAtom(atom.location, s));
    }
    for (const auto& patch : Q.patches()) {
        if (patch.order != 1) continue;
        std::vector<PolyScalarField> density(9);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                density[static_cast<std::size_t>(i * 3 + j)] =
                    patch.component(i) * v.comp[static_cast<std::size_t>(j)] * sign;
            }
        }
        measures.addPatch(DensityPatch(patch.support, 2, std::move(density)));
    }
    return Hyperflux(std::move(measures));
}

}  // namespace

Hyperflux moving_dipole_hyperflux(const MultipoleDistribution& Q, const PolyVectorField& v) {
    return moving_dipole_flux_impl(Q, v, -1.0);
}

Hyperflux moving_dipole_rearrangement(const MultipoleDistribution& Q, const PolyVectorField& v) {
    return moving_dipole_flux_impl(Q, v, 1.0);
}

EnergyRateSplit energy_rate_split(const PolyScalarField& phi, const PolyScalarField& phiDot,
                                  const MultipoleDistribution& Q,
                                  const MultipoleDistribution& QDot) {
    if (Q.order() != QDot.order() || Q.atoms().size() != QDot.atoms().size() ||
        Q.patches().size() != QDot.patches().size()) {
        throw std::invalid_argument("energy_rate_split: Q-dot does not share Q's structure");
    }
    for (std::size_t i = 0; i < Q.atoms().size(); ++i) {
        if (Q.atoms()[i].location != QDot.atoms()[i].location ||
            Q.atoms()[i].order() != QDot.atoms()[i].order()) {
            throw std::invalid_argument("energy_rate_split: atom structure mismatch");
        }
    }
    for (std::size_t i = 0; i < Q.patches().size(); ++i) {
        if (!(Q.patches()[i].support == QDot.patches()[i].support) ||
            Q.patches()[i].order != QDot.patches()[i].order) {
            throw std::invalid_argument("energy_rate_split: patch structure mismatch");
        }
    }
    return {evaluate(Q, phiDot), evaluate(QDot, phi)};
}

}  // namespace mpd
