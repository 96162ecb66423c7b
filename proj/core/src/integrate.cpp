#include "mpd/integrate.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace mpd {

namespace {

int g_margin = 0;

/// Gauss-Legendre nodes/weights on [0,1], n points, exact to degree 2n-1.
/// Newton iteration on P_n with the standard three-term recurrence.
void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Initial guess on [-1,1] (Chebyshev-like), then Newton.
        double t = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        x[static_cast<std::size_t>(i)] = 0.5 * (1.0 + t);
        w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

int points_for(int degree) { return degree / 2 + 1; }  // 2n-1 >= degree

std::vector<QuadratureNode> build_segment(int degree) {
    std::vector<double> x, w;
    gauss_legendre_unit(points_for(degree), x, w);
    std::vector<QuadratureNode> nodes;
    nodes.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) nodes.push_back({x[i], 0.0, 0.0, w[i]});
    return nodes;
}

// Duffy collapse of the unit square onto the unit triangle:
//   a = u,  b = v(1-u),  Jacobian (1-u).
// A total-degree-d polynomial pulls back to per-axis degrees <= d+1 in u and
// <= d in v, so the per-axis point counts below keep the rule exact.
std::vector<QuadratureNode> build_triangle(int degree) {
    std::vector<double> xu, wu, xv, wv;
    gauss_legendre_unit(points_for(degree + 1), xu, wu);
    gauss_legendre_unit(points_for(degree), xv, wv);
    std::vector<QuadratureNode> nodes;
    nodes.reserve(xu.size() * xv.size());
    for (std::size_t i = 0; i < xu.size(); ++i) {
        for (std::size_t j = 0; j < xv.size(); ++j) {
            const double u = xu[i], v = xv[j];
            nodes.push_back({u, v * (1.0 - u), 0.0, wu[i] * wv[j] * (1.0 - u)});
        }
    }
    return nodes;
}

// a = u,  b = v(1-u),  c = w(1-u)(1-v),  Jacobian (1-u)^2 (1-v).
std::vector<QuadratureNode> build_tetrahedron(int degree) {
    std::vector<double> xu, wu, xv, wv, xw, ww;
    gauss_legendre_unit(points_for(degree + 2), xu, wu);
    gauss_legendre_unit(points_for(degree + 1), xv, wv);
    gauss_legendre_unit(points_for(degree), xw, ww);
    std::vector<QuadratureNode> nodes;
    nodes.reserve(xu.size() * xv.size() * xw.size());
    for (std::size_t i = 0; i < xu.size(); ++i) {
        for (std::size_t j = 0; j < xv.size(); ++j) {
            for (std::size_t k = 0; k < xw.size(); ++k) {
                const double u = xu[i], v = xv[j], w = xw[k];
                nodes.push_back({u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v),
                                 wu[i] * wv[j] * ww[k] * (1.0 - u) * (1.0 - u) * (1.0 - v)});
            }
        }
    }
    return nodes;
}

}  // namespace

const QuadratureRule& QuadratureRule::cached(Domain domain, int degree) {
    if (degree < 0) throw std::invalid_argument("QuadratureRule: negative degree");
    using Key = std::pair<int, int>;
    static std::mutex mutex;
    static std::map<Key, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    const Key key{static_cast<int>(domain), degree};
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<QuadratureNode> nodes;
        switch (domain) {
            case Domain::Segment: nodes = build_segment(degree); break;
            case Domain::Triangle: nodes = build_triangle(degree); break;
            case Domain::Tetrahedron: nodes = build_tetrahedron(degree); break;
        }
        it = cache.emplace(key, QuadratureRule(domain, degree, std::move(nodes))).first;
    }
    return it->second;
}

const QuadratureRule& QuadratureRule::segment(int degree) {
    return cached(Domain::Segment, degree);
}
const QuadratureRule& QuadratureRule::triangle(int degree) {
    return cached(Domain::Triangle, degree);
}
const QuadratureRule& QuadratureRule::tetrahedron(int degree) {
    return cached(Domain::Tetrahedron, degree);
}

int quadrature_degree_margin() { return g_margin; }

void set_quadrature_degree_margin(int margin) {
    if (margin < 0) throw std::invalid_argument("quadrature margin must be >= 0");
    g_margin = margin;
}

double integrate_tet(const PolyScalarField& f, const Tet& t) {
    if (f.isZero()) return 0.0;
    const QuadratureRule& rule = QuadratureRule::tetrahedron(f.degree() + g_margin);
    const Point3& x0 = t.vertex(0);
    const Vec3 e1 = t.vertex(1) - x0;
    const Vec3 e2 = t.vertex(2) - x0;
    const Vec3 e3 = t.vertex(3) - x0;
    const double scale = 6.0 * t.volume();
    double sum = 0.0;
    for (const auto& n : rule.nodes()) {
        sum += n.weight * f.eval(x0 + e1 * n.a + e2 * n.b + e3 * n.c);
    }
    return sum * scale;
}

double integrate_face(const PolyScalarField& f, const OrientedFace& face) {
    if (face.area <= 0.0) throw std::invalid_argument("integrate_face: degenerate face");
    if (f.isZero()) return 0.0;
    const QuadratureRule& rule = QuadratureRule::triangle(f.degree() + g_margin);
    const Point3& p0 = face.vertices[0];
    const Vec3 e1 = face.vertices[1] - p0;
    const Vec3 e2 = face.vertices[2] - p0;
    const double scale = 2.0 * face.area;
    double sum = 0.0;
    for (const auto& n : rule.nodes()) {
        sum += n.weight * f.eval(p0 + e1 * n.a + e2 * n.b);
    }
    return sum * scale;
}

double integrate_edge(const PolyScalarField& f, const OrientedEdge& e) {
    if (e.length <= 0.0) throw std::invalid_argument("integrate_edge: zero-length edge");
    if (f.isZero()) return 0.0;
    const QuadratureRule& rule = QuadratureRule::segment(f.degree() + g_margin);
    const Point3& p0 = e.endpoints[0];
    const Vec3 d = e.endpoints[1] - p0;
    double sum = 0.0;
    for (const auto& n : rule.nodes()) {
        sum += n.weight * f.eval(p0 + d * n.a);
    }
    return sum * e.length;
}

double integrate_region(const PolyScalarField& f, const SimplicialRegion& region) {
    double sum = 0.0;
    for (const auto& t : region.tets()) sum += integrate_tet(f, t);
    return sum;
}

FaceFrame face_frame(const OrientedFace& f) {
    const Vec3 t1 = normalized(f.vertices[1] - f.vertices[0]);
    Vec3 t2 = f.vertices[2] - f.vertices[0];
    t2 = t2 - dot(t2, t1) * t1;
    return {t1, normalized(t2)};
}

PolyScalarField surface_divergence(const PolyVectorField& g, const OrientedFace& f) {
    const FaceFrame frame = face_frame(f);
    PolyScalarField out;
    for (const Vec3& t : {frame.t1, frame.t2}) {
        const PolyScalarField gt = dot(g, t);  // in-plane component
        out += gt.partial(0) * t.x + gt.partial(1) * t.y + gt.partial(2) * t.z;
    }
    return out;
}

PolyScalarField normal_derivative(const PolyScalarField& f, const OrientedFace& face) {
    return dot(gradient(f), face.unitNormal);
}

PolyVectorField tangential_projection(const PolyVectorField& g, const OrientedFace& face) {
    const PolyScalarField gn = dot(g, face.unitNormal);
    const Vec3& nu = face.unitNormal;
    return {{g.comp[0] - gn * nu.x, g.comp[1] - gn * nu.y, g.comp[2] - gn * nu.z}};
}

}  // namespace mpd
