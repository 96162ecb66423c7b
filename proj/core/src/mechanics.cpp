#include "mpd/mechanics.hpp"

#include <cmath>
#include <stdexcept>

#include "tensor_ops.hpp"

namespace mpd {

double ForceReport::total() const {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.value;
    return sum;
}

double ForceReport::term(const std::string& name) const {
    for (const auto& t : terms) {
        if (t.name == name) return t.value;
    }
    throw std::invalid_argument("ForceReport: unknown term " + name);
}

double power(const MultipoleDistribution& Q, const PolyScalarField& phi, const PolyVectorField& v,
             const std::optional<SimplicialRegion>& B) {
    if (phi.degree() > kMaxFieldDegree || v.degree() > kMaxFieldDegree) {
        throw std::invalid_argument("power: degree cap (16) exceeded");
    }
    const DerivativeTable derivs(phi, Q.order() + 1);
    double total = 0.0;
    for (const auto& atom : Q.atoms()) {
        if (B && !B->contains(atom.location)) continue;
        const int k = atom.order();
        const Vec3 vAt = v.eval(atom.location);
        double sum = 0.0;
        for (int m = 0; m < atom.strength.size(); ++m) {
            const double c = atom.strength.flat(m);
            if (c == 0.0) continue;
            for (int j = 0; j < 3; ++j) {
                sum += c * vAt[j] * derivs.forFlatIndex(m * 3 + j, k + 1).eval(atom.location);
            }
        }
        total -= sum;
    }
    for (const auto& patch : Q.patches()) {
        if (B) {
            const RegionOverlap overlap = classify_tet(*B, patch.support);
            if (overlap == RegionOverlap::Straddles) {
                throw std::invalid_argument(
                    "power: patch straddles the region boundary (clipping not supported)");
            }
            if (overlap == RegionOverlap::Disjoint) continue;
        }
        PolyScalarField integrand;
        for (int m = 0; m < static_cast<int>(patch.density.size()); ++m) {
            const PolyScalarField& rho = patch.component(m);
            if (rho.isZero()) continue;
            for (int j = 0; j < 3; ++j) {
                integrand += derivs.forFlatIndex(m * 3 + j, patch.order + 1) * v.comp[static_cast<std::size_t>(j)] * rho;
            }
        }
        total -= integrate_tet(integrand, patch.support);
    }
    return total;
}

EnergyRateCheck energy_rate_check(const MultipoleDistribution& Q, const PolyScalarField& phi,
                                  const PolyVectorField& v, double h) {
    if (!v.isConstant()) {
        throw std::invalid_argument(
            "energy_rate_check: v must be spatially constant; for varying v the printed power "
            "formula omits v-gradient terms (see module notes)");
    }
    if (!(h > 0.0)) throw std::invalid_argument("energy_rate_check: h must be positive");
    EnergyRateCheck out;
    out.power = power(Q, phi, v);
    const double up = pushforward_energy(Q, phi, v, h);
    const double dn = pushforward_energy(Q, phi, v, -h);
    out.centralDifferenceRate = (up - dn) / (2.0 * h);
    out.discrepancy = std::abs(out.power + out.centralDifferenceRate);
    return out;
}

namespace {

/// w_j = v^i_{,j} phi_{,i}: the velocity gradient contracted with grad phi.
PolyVectorField velocity_gradient_pullback(const PolyVectorField& v, const PolyScalarField& phi) {
    const PolyVectorField gphi = gradient(phi);
    PolyVectorField w;
    for (int j = 0; j < 3; ++j) {
        PolyScalarField sum;
        for (int i = 0; i < 3; ++i) {
            sum += v.comp[static_cast<std::size_t>(i)].partial(j) *
                   gphi.comp[static_cast<std::size_t>(i)];
        }
        w.comp[static_cast<std::size_t>(j)] = sum;
    }
    return w;
}

MultipoleDistribution patch_distribution(const DensityPatch& rho) {
    MultipoleDistribution Q(rho.order);
    Q.addPatch(rho);
    return Q;
}

}  // namespace

ForceReport force_decompose_dipole(const DensityPatch& rho, const PolyScalarField& phi,
                                   const PolyVectorField& v) {
    if (rho.order != 1) {
        throw std::invalid_argument("force_decompose_dipole: density patch must have order 1");
    }
    const PolyVectorField p{{rho.component(0), rho.component(1), rho.component(2)}};
    const PolyScalarField vGradPhi = dot(v, gradient(phi));

    ForceReport report;
    report.power = power(patch_distribution(rho), phi, v);

    double boundary = 0.0;
    for (int a = 0; a < 4; ++a) {
        const OrientedFace f = face(rho.support, a);
        boundary += integrate_face(vGradPhi * dot(p, f.unitNormal), f);
    }
    report.terms.push_back({"boundary_force", boundary});
    report.terms.push_back(
        {"volume_force", -integrate_tet(vGradPhi * p.divergence(), rho.support)});

    // Stress power -phi_{,j} rho^i v^j_{,i}: sigma^i_j = phi_{,j} rho^i acting
    // on the velocity gradient.
    const PolyVectorField gphi = gradient(phi);
    PolyScalarField stressPower;
    std::array<std::array<PolyScalarField, 3>, 3> sigma;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                gphi.comp[static_cast<std::size_t>(j)] * p.comp[static_cast<std::size_t>(i)];
            stressPower += sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                           v.comp[static_cast<std::size_t>(j)].partial(i);
        }
    }
    report.terms.push_back({"stress", -integrate_tet(stressPower, rho.support)});
    report.stress = std::move(sigma);
    return report;
}

ForceReport force_decompose_quadrupole(const DensityPatch& rho, const PolyScalarField& phi,
                                       const PolyVectorField& v) {
    if (rho.order != 2) {
        throw std::invalid_argument("force_decompose_quadrupole: density patch must have order 2");
    }
    const QuadBound bound = bound_quadrupole(rho);
    const PolyScalarField vGradPhi = dot(v, gradient(phi));
    const PolyVectorField w = velocity_gradient_pullback(v, phi);
    const PolyVectorField divFirst = detail::divergence_first_index(rho);    // rho^{jk}_{,j}
    const PolyVectorField divSecond = detail::divergence_second_index(rho);  // rho^{jk}_{,k}

    ForceReport report;
    report.power = power(patch_distribution(rho), phi, v);

    // Edge force density F^L_i = phi_{,i} l_ab acting on v.
    double edgeForce = 0.0;
    for (const auto& ed : bound.edges) {
        edgeForce += integrate_edge(vGradPhi * ed.lineDensity, ed.edge);
    }
    report.terms.push_back({"edge_force", edgeForce});

    double faceCharge = 0.0;    // -(div_t rho_at) v^i phi_{,i}
    double faceDipole = 0.0;    // grad_nu(v^i phi_{,i}) rho_anu
    double faceStressA = 0.0;   // -v^i_{,j} phi_{,i} rho_a^j
    double faceStressB = 0.0;   // -v^i_{,k} phi_{,i} rho^{jk} nu_j
    double faceChargeDiv = 0.0; // -v^i phi_{,i} rho^{jk}_{,k} nu_j
    for (int a = 0; a < 4; ++a) {
        const QuadBoundFace& fc = bound.faces[static_cast<std::size_t>(a)];
        const Vec3& nu = fc.face.unitNormal;
        faceCharge -= integrate_face(surface_divergence(fc.rhoBoundaryTangent, fc.face) * vGradPhi,
                                     fc.face);
        faceDipole += integrate_face(normal_derivative(vGradPhi, fc.face) * fc.normalDipole,
                                     fc.face);
        faceStressA -= integrate_face(dot(fc.rhoBoundary, w), fc.face);
        faceStressB -= integrate_face(dot(detail::contract_first_index(rho, nu), w), fc.face);
        faceChargeDiv -= integrate_face(vGradPhi * dot(divSecond, nu), fc.face);
    }
    report.terms.push_back({"face_charge", faceCharge});
    report.terms.push_back({"face_dipole", faceDipole});
    report.terms.push_back({"face_stress_a", faceStressA});
    report.terms.push_back({"face_stress_b", faceStressB});

    // Hyper-stress power v^i_{,jk} phi_{,i} rho^{jk}.
    const PolyVectorField gphi = gradient(phi);
    PolyScalarField hyper;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            PolyScalarField vjk;
            for (int i = 0; i < 3; ++i) {
                vjk += v.comp[static_cast<std::size_t>(i)].partial(j).partial(k) *
                       gphi.comp[static_cast<std::size_t>(i)];
            }
            hyper += vjk * rho.component(j * 3 + k);
        }
    }
    report.terms.push_back({"hyper_stress", integrate_tet(hyper, rho.support)});
    report.terms.push_back({"volume_stress_a", integrate_tet(dot(divFirst, w), rho.support)});
    report.terms.push_back({"face_charge_div", faceChargeDiv});
    report.terms.push_back({"volume_stress_b", integrate_tet(dot(divSecond, w), rho.support)});
    report.terms.push_back(
        {"volume_charge", integrate_tet(vGradPhi * bound.volumeCharge, rho.support)});
    return report;
}

}  // namespace mpd
