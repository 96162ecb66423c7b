#include "mpd/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace mpd {

PolyScalarField PolyScalarField::constant(double c) {
    PolyScalarField f;
    f.addTerm({}, c);
    return f;
}

PolyScalarField PolyScalarField::variable(int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("variable: axis out of range");
    MultiIndex m;
    m.e[static_cast<std::size_t>(axis)] = 1;
    return monomial(m, 1.0);
}

PolyScalarField PolyScalarField::monomial(const MultiIndex& m, double coeff) {
    PolyScalarField f;
    f.addTerm(m, coeff);
    return f;
}

void PolyScalarField::addTerm(const MultiIndex& m, double coeff) {
    if (m.e[0] < 0 || m.e[1] < 0 || m.e[2] < 0) {
        throw std::invalid_argument("addTerm: negative exponent");
    }
    if (!std::isfinite(coeff)) throw std::invalid_argument("addTerm: non-finite coefficient");
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

double PolyScalarField::eval(const Point3& p) const {
    // Cache per-axis powers up to the maximum exponent present.
    int maxe[3] = {0, 0, 0};
    for (const auto& [m, c] : terms_) {
        for (int i = 0; i < 3; ++i) maxe[i] = std::max(maxe[i], m.e[static_cast<std::size_t>(i)]);
    }
    std::array<std::vector<double>, 3> pow;
    const double coords[3] = {p.x, p.y, p.z};
    for (int i = 0; i < 3; ++i) {
        pow[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(maxe[i]) + 1, 1.0);
        for (int k = 1; k <= maxe[i]; ++k) {
            pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)] * coords[i];
        }
    }
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        sum += c * pow[0][static_cast<std::size_t>(m.e[0])] *
               pow[1][static_cast<std::size_t>(m.e[1])] * pow[2][static_cast<std::size_t>(m.e[2])];
    }
    return sum;
}

double PolyScalarField::coefficient(const MultiIndex& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
}

int PolyScalarField::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

PolyScalarField PolyScalarField::partial(int axis) const {
    if (axis < 0 || axis > 2) throw std::invalid_argument("partial: axis out of range");
    const auto a = static_cast<std::size_t>(axis);
    PolyScalarField out;
    for (const auto& [m, c] : terms_) {
        if (m.e[a] == 0) continue;
        MultiIndex d = m;
        d.e[a] -= 1;
        out.addTerm(d, c * static_cast<double>(m.e[a]));
    }
    return out;
}

PolyScalarField PolyScalarField::substitute(const std::array<PolyScalarField, 3>& repl) const {
    int maxe[3] = {0, 0, 0};
    for (const auto& [m, c] : terms_) {
        for (int i = 0; i < 3; ++i) maxe[i] = std::max(maxe[i], m.e[static_cast<std::size_t>(i)]);
    }
    std::array<std::vector<PolyScalarField>, 3> powers;
    for (std::size_t i = 0; i < 3; ++i) {
        powers[i].reserve(static_cast<std::size_t>(maxe[i]) + 1);
        powers[i].push_back(PolyScalarField::constant(1.0));
        for (int k = 1; k <= maxe[i]; ++k) powers[i].push_back(powers[i].back() * repl[i]);
    }
    PolyScalarField out;
    for (const auto& [m, c] : terms_) {
        out += powers[0][static_cast<std::size_t>(m.e[0])] *
               powers[1][static_cast<std::size_t>(m.e[1])] *
               powers[2][static_cast<std::size_t>(m.e[2])] * c;
    }
    return out;
}

PolyScalarField PolyScalarField::operator+(const PolyScalarField& o) const {
    PolyScalarField out = *this;
    out += o;
    return out;
}

PolyScalarField& PolyScalarField::operator+=(const PolyScalarField& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
}

PolyScalarField PolyScalarField::operator-(const PolyScalarField& o) const {
    PolyScalarField out = *this;
    for (const auto& [m, c] : o.terms_) out.addTerm(m, -c);
    return out;
}

PolyScalarField PolyScalarField::operator-() const {
    PolyScalarField out;
    for (const auto& [m, c] : terms_) out.addTerm(m, -c);
    return out;
}

PolyScalarField PolyScalarField::operator*(const PolyScalarField& o) const {
    PolyScalarField out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            const MultiIndex m{{ma.e[0] + mb.e[0], ma.e[1] + mb.e[1], ma.e[2] + mb.e[2]}};
            out.addTerm(m, ca * cb);
        }
    }
    return out;
}

PolyScalarField PolyScalarField::operator*(double s) const {
    PolyScalarField out;
    for (const auto& [m, c] : terms_) out.addTerm(m, c * s);
    return out;
}

int PolyVectorField::degree() const {
    return std::max({comp[0].degree(), comp[1].degree(), comp[2].degree()});
}

bool PolyVectorField::isConstant() const {
    for (const auto& c : comp) {
        if (c.degree() > 0) return false;
    }
    return true;
}

PolyScalarField PolyVectorField::divergence() const {
    return comp[0].partial(0) + comp[1].partial(1) + comp[2].partial(2);
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
    return {{comp[0] + o.comp[0], comp[1] + o.comp[1], comp[2] + o.comp[2]}};
}

PolyVectorField PolyVectorField::operator-(const PolyVectorField& o) const {
    return {{comp[0] - o.comp[0], comp[1] - o.comp[1], comp[2] - o.comp[2]}};
}

PolyVectorField PolyVectorField::operator*(double s) const {
    return {{comp[0] * s, comp[1] * s, comp[2] * s}};
}

PolyVectorField constant_vector_field(const Vec3& v) {
    return {{PolyScalarField::constant(v.x), PolyScalarField::constant(v.y),
             PolyScalarField::constant(v.z)}};
}

PolyVectorField gradient(const PolyScalarField& f) {
    return {{f.partial(0), f.partial(1), f.partial(2)}};
}

PolyScalarField dot(const PolyVectorField& g, const Vec3& v) {
    return g.comp[0] * v.x + g.comp[1] * v.y + g.comp[2] * v.z;
}

PolyScalarField dot(const PolyVectorField& g, const PolyVectorField& h) {
    return g.comp[0] * h.comp[0] + g.comp[1] * h.comp[1] + g.comp[2] * h.comp[2];
}

PolyScalarField compose_flow(const PolyScalarField& f, const PolyVectorField& v, double t) {
    const std::array<PolyScalarField, 3> repl = {
        PolyScalarField::variable(0) + v.comp[0] * t,
        PolyScalarField::variable(1) + v.comp[1] * t,
        PolyScalarField::variable(2) + v.comp[2] * t,
    };
    return f.substitute(repl);
}

PolyScalarField partial_chain(const PolyScalarField& f, const std::vector<int>& axes) {
    PolyScalarField out = f;
    for (const int a : axes) out = out.partial(a);
    return out;
}

}  // namespace mpd
