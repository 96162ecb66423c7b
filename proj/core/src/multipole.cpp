#include "mpd/multipole.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mpd/integrate.hpp"

namespace mpd {

namespace {

int pow3(int k) {
    int n = 1;
    for (int i = 0; i < k; ++i) n *= 3;
    return n;
}

void check_order(int k) {
    if (k < 0 || k > kMaxMultipoleOrder) {
        throw std::invalid_argument("multipole order must be in [0, 4]");
    }
}

void check_degree_cap(const PolyScalarField& f, const char* what) {
    if (f.degree() > kMaxFieldDegree) {
        throw std::invalid_argument(std::string(what) + ": degree cap (16) exceeded");
    }
}

}  // namespace

CoeffTensor::CoeffTensor(int order) : order_(order) {
    check_order(order);
    entries_.assign(static_cast<std::size_t>(pow3(order)), 0.0);
}

CoeffTensor::CoeffTensor(int order, std::vector<double> entries)
    : order_(order), entries_(std::move(entries)) {
    check_order(order);
    if (entries_.size() != static_cast<std::size_t>(pow3(order))) {
        throw std::invalid_argument("CoeffTensor: wrong entry count");
    }
    for (const double v : entries_) {
        if (!std::isfinite(v)) throw std::invalid_argument("CoeffTensor: non-finite entry");
    }
}

void CoeffTensor::setFlat(int m, double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("CoeffTensor: non-finite entry");
    entries_[static_cast<std::size_t>(m)] = value;
}

int CoeffTensor::flatten(const std::vector<int>& idx) {
    int m = 0;
    for (const int i : idx) {
        if (i < 0 || i > 2) throw std::invalid_argument("CoeffTensor: index out of range");
        m = m * 3 + i;
    }
    return m;
}

std::vector<int> CoeffTensor::unflatten(int m, int order) {
    std::vector<int> idx(static_cast<std::size_t>(order));
    for (int p = order - 1; p >= 0; --p) {
        idx[static_cast<std::size_t>(p)] = m % 3;
        m /= 3;
    }
    return idx;
}

double CoeffTensor::at(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != order_) {
        throw std::invalid_argument("CoeffTensor: wrong index count");
    }
    return entries_[static_cast<std::size_t>(flatten(idx))];
}

void CoeffTensor::set(const std::vector<int>& idx, double value) {
    if (static_cast<int>(idx.size()) != order_) {
        throw std::invalid_argument("CoeffTensor: wrong index count");
    }
    setFlat(flatten(idx), value);
}

CoeffTensor symmetrize(const CoeffTensor& c) {
    const int k = c.order();
    CoeffTensor out(k);
    if (k == 0) {
        out.setFlat(0, c.flat(0));
        return out;
    }
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    double permCount = 1.0;
    for (int i = 2; i <= k; ++i) permCount *= i;
    for (int m = 0; m < c.size(); ++m) {
        const std::vector<int> idx = CoeffTensor::unflatten(m, k);
        double sum = 0.0;
        std::vector<int> p = perm;
        do {
            std::vector<int> permuted(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) {
                permuted[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
            }
            sum += c.flat(CoeffTensor::flatten(permuted));
        } while (std::next_permutation(p.begin(), p.end()));
        out.setFlat(m, sum / permCount);
    }
    return out;
}

CoeffTensor outer_append(const CoeffTensor& c, const Vec3& v) {
    CoeffTensor out(c.order() + 1);
    for (int m = 0; m < c.size(); ++m) {
        for (int j = 0; j < 3; ++j) out.setFlat(m * 3 + j, c.flat(m) * v[j]);
    }
    return out;
}

PointAtom::PointAtom(const Point3& loc, CoeffTensor s) : location(loc), strength(std::move(s)) {
    if (!all_finite(location)) throw std::invalid_argument("PointAtom: non-finite location");
}

DensityPatch::DensityPatch(Tet supportTet, int k, std::vector<PolyScalarField> components)
    : support(std::move(supportTet)), order(k), density(std::move(components)) {
    check_order(k);
    if (density.size() != static_cast<std::size_t>(pow3(k))) {
        throw std::invalid_argument("DensityPatch: wrong component count");
    }
    for (const auto& f : density) check_degree_cap(f, "DensityPatch");
}

int DensityPatch::maxDegree() const {
    int d = 0;
    for (const auto& f : density) d = std::max(d, f.degree());
    return d;
}

MultipoleDistribution::MultipoleDistribution(int order) : order_(order) { check_order(order); }

void MultipoleDistribution::addAtom(PointAtom atom) {
    if (atom.order() > order_) {
        throw std::invalid_argument("addAtom: component order exceeds distribution order");
    }
    atoms_.push_back(std::move(atom));
}

void MultipoleDistribution::addPatch(DensityPatch patch) {
    if (patch.order > order_) {
        throw std::invalid_argument("addPatch: component order exceeds distribution order");
    }
    patches_.push_back(std::move(patch));
}

MultipoleDistribution MultipoleDistribution::componentOfOrder(int k) const {
    MultipoleDistribution out(order_);
    for (const auto& a : atoms_) {
        if (a.order() == k) out.addAtom(a);
    }
    for (const auto& p : patches_) {
        if (p.order == k) out.addPatch(p);
    }
    return out;
}

bool MultipoleDistribution::hasComponentOfOrder(int k) const {
    for (const auto& a : atoms_) {
        if (a.order() == k) return true;
    }
    for (const auto& p : patches_) {
        if (p.order == k) return true;
    }
    return false;
}

DerivativeTable::DerivativeTable(const PolyScalarField& phi, int maxOrder) {
    table_[MultiIndex{}] = phi;
    // Breadth-first over exponent histograms; mixed partials commute, so the
    // histogram determines the derivative.
    for (int total = 1; total <= maxOrder; ++total) {
        for (int e0 = 0; e0 <= total; ++e0) {
            for (int e1 = 0; e1 + e0 <= total; ++e1) {
                const int e2 = total - e0 - e1;
                MultiIndex target{{e0, e1, e2}};
                MultiIndex parent = target;
                int axis = 0;
                if (e0 > 0) {
                    parent.e[0] -= 1;
                    axis = 0;
                } else if (e1 > 0) {
                    parent.e[1] -= 1;
                    axis = 1;
                } else {
                    parent.e[2] -= 1;
                    axis = 2;
                }
                table_[target] = table_.at(parent).partial(axis);
            }
        }
    }
}

const PolyScalarField& DerivativeTable::forFlatIndex(int m, int order) const {
    MultiIndex hist{};
    for (const int i : CoeffTensor::unflatten(m, order)) hist.e[static_cast<std::size_t>(i)] += 1;
    return table_.at(hist);
}

namespace {

bool atom_in_region(const PointAtom& a, const std::optional<SimplicialRegion>& B) {
    return !B || B->contains(a.location);
}

/// True if the patch participates; throws on straddle.
bool patch_in_region(const DensityPatch& p, const std::optional<SimplicialRegion>& B) {
    if (!B) return true;
    switch (classify_tet(*B, p.support)) {
        case RegionOverlap::Inside: return true;
        case RegionOverlap::Disjoint: return false;
        case RegionOverlap::Straddles: break;
    }
    throw std::invalid_argument("patch straddles the region boundary (clipping not supported)");
}

}  // namespace

double evaluate(const MultipoleDistribution& Q, const PolyScalarField& phi,
                const std::optional<SimplicialRegion>& B) {
    check_degree_cap(phi, "evaluate");
    const DerivativeTable derivs(phi, Q.order());
    double total = 0.0;
    for (const auto& atom : Q.atoms()) {
        if (!atom_in_region(atom, B)) continue;
        const int k = atom.order();
        double sum = 0.0;
        for (int m = 0; m < atom.strength.size(); ++m) {
            const double c = atom.strength.flat(m);
            if (c == 0.0) continue;
            sum += c * derivs.forFlatIndex(m, k).eval(atom.location);
        }
        total += sum;
    }
    for (const auto& patch : Q.patches()) {
        if (!patch_in_region(patch, B)) continue;
        PolyScalarField integrand;
        for (int m = 0; m < static_cast<int>(patch.density.size()); ++m) {
            const PolyScalarField& rho = patch.component(m);
            if (rho.isZero()) continue;
            integrand += derivs.forFlatIndex(m, patch.order) * rho;
        }
        total += integrate_tet(integrand, patch.support);
    }
    return total;
}

MultipoleDistribution restrict_to(const MultipoleDistribution& Q, const SimplicialRegion& B) {
    const std::optional<SimplicialRegion> region(B);
    MultipoleDistribution out(Q.order());
    for (const auto& atom : Q.atoms()) {
        if (atom_in_region(atom, region)) out.addAtom(atom);
    }
    for (const auto& patch : Q.patches()) {
        if (patch_in_region(patch, region)) out.addPatch(patch);
    }
    return out;
}

double pushforward_energy(const MultipoleDistribution& Q, const PolyScalarField& phi,
                          const PolyVectorField& v, double t) {
    check_degree_cap(phi, "pushforward_energy");
    return evaluate(Q, compose_flow(phi, v, t));
}

MultipoleDistribution symmetrize(const MultipoleDistribution& Q) {
    MultipoleDistribution out(Q.order());
    for (const auto& atom : Q.atoms()) {
        out.addAtom(PointAtom(atom.location, symmetrize(atom.strength)));
    }
    for (const auto& patch : Q.patches()) {
        const int k = patch.order;
        std::vector<PolyScalarField> sym(patch.density.size());
        std::vector<int> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        double permCount = 1.0;
        for (int i = 2; i <= k; ++i) permCount *= i;
        for (int m = 0; m < static_cast<int>(patch.density.size()); ++m) {
            const std::vector<int> idx = CoeffTensor::unflatten(m, k);
            PolyScalarField sum;
            std::vector<int> p = perm;
            if (k == 0) {
                sum = patch.component(0);
            } else {
                do {
                    std::vector<int> permuted(static_cast<std::size_t>(k));
                    for (int i = 0; i < k; ++i) {
                        permuted[static_cast<std::size_t>(i)] =
                            idx[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
                    }
                    sum += patch.component(CoeffTensor::flatten(permuted));
                } while (std::next_permutation(p.begin(), p.end()));
                sum = sum * (1.0 / permCount);
            }
            sym[static_cast<std::size_t>(m)] = sum;
        }
        out.addPatch(DensityPatch(patch.support, k, std::move(sym)));
    }
    return out;
}

}  // namespace mpd
