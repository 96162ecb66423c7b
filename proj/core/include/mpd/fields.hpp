#pragma once

#include <array>
#include <compare>
#include <map>
#include <vector>

#include "mpd/geometry.hpp"

namespace mpd {

/// Inputs of total degree above this are rejected at API boundaries.
/// Intermediate products (integrands) may exceed it.
inline constexpr int kMaxFieldDegree = 16;

struct MultiIndex {
    std::array<int, 3> e{0, 0, 0};

    int degree() const { return e[0] + e[1] + e[2]; }
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// A trivariate polynomial with real coefficients.  Zero-coefficient terms are
/// never stored.  Values are immutable in spirit: every operation returns a new
/// field, so sharing across threads is safe.
class PolyScalarField {
public:
    PolyScalarField() = default;  // the zero polynomial

    static PolyScalarField constant(double c);
    static PolyScalarField variable(int axis);
    static PolyScalarField monomial(const MultiIndex& m, double coeff);

    double eval(const Point3& p) const;
    double coefficient(const MultiIndex& m) const;
    const std::map<MultiIndex, double>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    /// Total degree; 0 for the zero polynomial.
    int degree() const;

    /// Exact symbolic partial derivative along axis in {0,1,2}.
    PolyScalarField partial(int axis) const;

    /// f(r0(x), r1(x), r2(x)) expanded exactly.
    PolyScalarField substitute(const std::array<PolyScalarField, 3>& repl) const;

    PolyScalarField operator+(const PolyScalarField& o) const;
    PolyScalarField operator-(const PolyScalarField& o) const;
    PolyScalarField operator-() const;
    PolyScalarField operator*(const PolyScalarField& o) const;
    PolyScalarField operator*(double s) const;
    friend PolyScalarField operator*(double s, const PolyScalarField& f) { return f * s; }
    PolyScalarField& operator+=(const PolyScalarField& o);

    void addTerm(const MultiIndex& m, double coeff);

    friend bool operator==(const PolyScalarField& a, const PolyScalarField& b) {
        return a.terms_ == b.terms_;
    }

private:
    std::map<MultiIndex, double> terms_;
};

struct PolyVectorField {
    std::array<PolyScalarField, 3> comp{};

    Vec3 eval(const Point3& p) const {
        return {comp[0].eval(p), comp[1].eval(p), comp[2].eval(p)};
    }
    int degree() const;
    bool isConstant() const;
    PolyScalarField divergence() const;

    PolyVectorField operator+(const PolyVectorField& o) const;
    PolyVectorField operator-(const PolyVectorField& o) const;
    PolyVectorField operator*(double s) const;

    friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;
};

PolyVectorField constant_vector_field(const Vec3& v);
PolyVectorField gradient(const PolyScalarField& f);
PolyScalarField dot(const PolyVectorField& g, const Vec3& v);
PolyScalarField dot(const PolyVectorField& g, const PolyVectorField& h);

/// phi composed with the flow c_t(x) = x + t v(x), expanded exactly.
PolyScalarField compose_flow(const PolyScalarField& f, const PolyVectorField& v, double t);

/// Repeated partials phi_{,i1...ik} for the index tuple given by `axes`.
PolyScalarField partial_chain(const PolyScalarField& f, const std::vector<int>& axes);

}  // namespace mpd
