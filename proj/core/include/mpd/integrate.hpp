#pragma once

#include <vector>

#include "mpd/fields.hpp"
#include "mpd/geometry.hpp"

namespace mpd {

/// A node on the reference domain: the unit segment [0,1], the unit triangle
/// {a,b >= 0, a+b <= 1}, or the unit tetrahedron {a,b,c >= 0, a+b+c <= 1}.
struct QuadratureNode {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double weight = 0.0;
};

/// Rules are collapsed Gauss-Legendre tensor products (Duffy transform), exact
/// for all polynomials up to the requested total degree.  Weights sum to the
/// reference-domain measure (1, 1/2, 1/6).  Rules are built once per degree and
/// cached; cached rules are immutable and safe to share across threads.
class QuadratureRule {
public:
    enum class Domain { Segment, Triangle, Tetrahedron };

    static const QuadratureRule& segment(int exactnessDegree);
    static const QuadratureRule& triangle(int exactnessDegree);
    static const QuadratureRule& tetrahedron(int exactnessDegree);

    Domain domain() const { return domain_; }
    int exactnessDegree() const { return degree_; }
    const std::vector<QuadratureNode>& nodes() const { return nodes_; }

private:
    QuadratureRule(Domain d, int degree, std::vector<QuadratureNode> nodes)
        : domain_(d), degree_(degree), nodes_(std::move(nodes)) {}

    static const QuadratureRule& cached(Domain d, int degree);

    Domain domain_;
    int degree_;
    std::vector<QuadratureNode> nodes_;
};

/// Extra exactness degree added to every symbolically computed integrand
/// degree.  Zero by default: the rule degree equals the polynomial degree,
/// never an estimate.  Set once at startup; not synchronized.
int quadrature_degree_margin();
void set_quadrature_degree_margin(int margin);

double integrate_tet(const PolyScalarField& f, const Tet& t);
double integrate_face(const PolyScalarField& f, const OrientedFace& face);
double integrate_edge(const PolyScalarField& f, const OrientedEdge& e);
double integrate_region(const PolyScalarField& f, const SimplicialRegion& region);

/// Orthonormal in-plane frame of a flat face.
struct FaceFrame {
    Vec3 t1{};
    Vec3 t2{};
};
FaceFrame face_frame(const OrientedFace& f);

/// Surface divergence of a tangential field on a flat face: the in-plane frame
/// is built per face and the in-plane components are differentiated along the
/// frame directions.  Exact for polynomials; meaningful on the face itself.
PolyScalarField surface_divergence(const PolyVectorField& g, const OrientedFace& f);

/// nu . grad f with the face's constant unit normal.
PolyScalarField normal_derivative(const PolyScalarField& f, const OrientedFace& face);

/// Tangential projection g - (g.nu)nu with the face's constant unit normal.
PolyVectorField tangential_projection(const PolyVectorField& g, const OrientedFace& face);

}  // namespace mpd
