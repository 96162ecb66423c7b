#pragma once

#include <optional>
#include <vector>

#include "mpd/fields.hpp"
#include "mpd/geometry.hpp"

namespace mpd {

/// Highest supported multipole order: charge, dipole, quadrupole, octupole,
/// plus one spare order for moving-octupole promotion checks.
inline constexpr int kMaxMultipoleOrder = 4;

/// A rank-k tensor of coefficients c^{i1...ik}, stored in full (unsymmetrized)
/// row-major form: flat index = i1*3^{k-1} + ... + ik.
class CoeffTensor {
public:
    explicit CoeffTensor(int order);
    CoeffTensor(int order, std::vector<double> entries);

    int order() const { return order_; }
    int size() const { return static_cast<int>(entries_.size()); }
    double flat(int m) const { return entries_[static_cast<std::size_t>(m)]; }
    void setFlat(int m, double value);
    const std::vector<double>& entries() const { return entries_; }

    double at(const std::vector<int>& idx) const;
    void set(const std::vector<int>& idx, double value);

    static int flatten(const std::vector<int>& idx);
    /// Digits of m in base 3, most significant first: (i1,...,ik).
    static std::vector<int> unflatten(int m, int order);

    friend bool operator==(const CoeffTensor&, const CoeffTensor&) = default;

private:
    int order_;
    std::vector<double> entries_;
};

/// Average over all permutations of the k indices.
CoeffTensor symmetrize(const CoeffTensor& c);

/// d^{i1...ik j} = c^{i1...ik} v^j: the extra index is appended last, the way a
/// velocity promotes a k-th order component to order k+1.
CoeffTensor outer_append(const CoeffTensor& c, const Vec3& v);

struct PointAtom {
    Point3 location{};
    CoeffTensor strength;

    PointAtom(const Point3& loc, CoeffTensor s);
    int order() const { return strength.order(); }

    friend bool operator==(const PointAtom&, const PointAtom&) = default;
};

/// A polynomial density rho^{i1...ik} supported on a single tet; one scalar
/// field per tensor slot, flat-indexed like CoeffTensor.
struct DensityPatch {
    Tet support;
    int order = 0;
    std::vector<PolyScalarField> density;

    DensityPatch(Tet supportTet, int k, std::vector<PolyScalarField> components);
    const PolyScalarField& component(int flatIndex) const {
        return density[static_cast<std::size_t>(flatIndex)];
    }
    int maxDegree() const;

    friend bool operator==(const DensityPatch&, const DensityPatch&) = default;
};

/// An order-r multipole distribution: per order k <= r, point atoms and smooth
/// polynomial patches.  Immutable once populated; evaluation is pure.
class MultipoleDistribution {
public:
    explicit MultipoleDistribution(int order);

    int order() const { return order_; }
    const std::vector<PointAtom>& atoms() const { return atoms_; }
    const std::vector<DensityPatch>& patches() const { return patches_; }

    void addAtom(PointAtom atom);
    void addPatch(DensityPatch patch);

    /// The sub-distribution holding only the order-k component.
    MultipoleDistribution componentOfOrder(int k) const;
    bool hasComponentOfOrder(int k) const;

    friend bool operator==(const MultipoleDistribution&, const MultipoleDistribution&) = default;

private:
    int order_;
    std::vector<PointAtom> atoms_;
    std::vector<DensityPatch> patches_;
};

/// Q_B(phi) = sum_k [ atoms: c^{i1..ik} phi_{,i1..ik}(loc) for loc in B
///                  + patches: integral of phi_{,i1..ik} rho^{i1..ik} dV ].
/// No region means all of space.  Atoms on the boundary of B count as inside.
/// Patches must lie inside a single cell of B or be disjoint from it;
/// straddling patches are rejected (clipping is not supported).
double evaluate(const MultipoleDistribution& Q, const PolyScalarField& phi,
                const std::optional<SimplicialRegion>& B = std::nullopt);

MultipoleDistribution restrict_to(const MultipoleDistribution& Q, const SimplicialRegion& B);

/// Q(phi o c_t) with c_t(x) = x + t v(x); equals evaluate(Q, phi) at t = 0.
double pushforward_energy(const MultipoleDistribution& Q, const PolyScalarField& phi,
                          const PolyVectorField& v, double t);

/// Symmetrizes every atom strength and patch density.  Leaves evaluate()
/// unchanged because mixed partials commute.
MultipoleDistribution symmetrize(const MultipoleDistribution& Q);

/// All distinct partial derivatives of phi up to the given order, keyed by the
/// exponent histogram.  Shared by every module that contracts derivative
/// tuples against tensors.
class DerivativeTable {
public:
    DerivativeTable(const PolyScalarField& phi, int maxOrder);
    /// phi_{,i1...ik} for the base-3 digit tuple of the flat index.
    const PolyScalarField& forFlatIndex(int m, int order) const;

private:
    std::map<MultiIndex, PolyScalarField> table_;
};

}  // namespace mpd
