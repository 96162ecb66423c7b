#pragma once

// Internal rank-2 contraction helpers shared by bound and mechanics.

#include "mpd/fields.hpp"
#include "mpd/multipole.hpp"

namespace mpd::detail {

/// rho_a^i = rho^{ij} nu_j.
inline PolyVectorField contract_second_index(const DensityPatch& rho, const Vec3& nu) {
    PolyVectorField out;
    for (int i = 0; i < 3; ++i) {
        PolyScalarField sum;
        for (int j = 0; j < 3; ++j) sum += rho.component(i * 3 + j) * nu[j];
        out.comp[static_cast<std::size_t>(i)] = sum;
    }
    return out;
}

/// q_k = rho^{jk} nu_j.
inline PolyVectorField contract_first_index(const DensityPatch& rho, const Vec3& nu) {
    PolyVectorField out;
    for (int k = 0; k < 3; ++k) {
        PolyScalarField sum;
        for (int j = 0; j < 3; ++j) sum += rho.component(j * 3 + k) * nu[j];
        out.comp[static_cast<std::size_t>(k)] = sum;
    }
    return out;
}

/// d_j = rho^{jk}_{,k}.
inline PolyVectorField divergence_second_index(const DensityPatch& rho) {
    PolyVectorField out;
    for (int j = 0; j < 3; ++j) {
        PolyScalarField sum;
        for (int k = 0; k < 3; ++k) sum += rho.component(j * 3 + k).partial(k);
        out.comp[static_cast<std::size_t>(j)] = sum;
    }
    return out;
}

/// d_k = rho^{jk}_{,j}.
inline PolyVectorField divergence_first_index(const DensityPatch& rho) {
    PolyVectorField out;
    for (int k = 0; k < 3; ++k) {
        PolyScalarField sum;
        for (int j = 0; j < 3; ++j) sum += rho.component(j * 3 + k).partial(j);
        out.comp[static_cast<std::size_t>(k)] = sum;
    }
    return out;
}

}  // namespace mpd::detail
