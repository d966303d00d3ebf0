#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "quermass/polytope.hpp"

namespace quermass {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateHull: return "DegenerateHull";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::WrongArity: return "WrongArity";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::LevelTooHigh: return "LevelTooHigh";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::OriginNotInterior: return "OriginNotInterior";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::NotNested: return "NotNested";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::CannotNest: return "CannotNest";
        case ErrorKind::ConstructionFailed: return "ConstructionFailed";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

double Polytope::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            best = std::max(best, norm(vertices_[i] - vertices_[j]));
    return best;
}

double support(const Polytope& body, const Vec& direction) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& v : body.vertices()) best = std::max(best, dot(v, direction));
    return best;
}

namespace {

// Candidate sums for large operands. x + y can only be a vertex of X + Y if
// some w in the normal cone of y at Y is maximised by x over X. With u the
// cone axis and theta >= |w - u| over unit w in the cone,
//   <x - x*, u> >= -|x - x*| theta >= -extent(X) theta,
// where x* maximises <., u>. Points failing that bound are interior.
std::vector<Vec> pruned_sum_candidates(const Polytope& x, const Polytope& y) {
    std::vector<Vec> pts;
    const double slack = 1e-9 * (x.extent() + y.extent());
    for (std::size_t j = 0; j < y.size(); ++j) {
        const std::vector<int>& fs = y.vertex_facets()[j];
        Vec u{};
        for (int f : fs) u += y.facets()[f].normal;
        u = normalized(u);
        // The bound holds at the rays when every ray has <n, u> >= 0.
        double theta = 0.0;
        for (int f : fs) {
            const Vec& n = y.facets()[f].normal;
            theta = std::max(theta, dot(n, u) < 0.0 ? 2.0 : norm(n - u));
        }
        double h = -std::numeric_limits<double>::infinity();
        for (const Vec& v : x.vertices()) h = std::max(h, dot(v, u));
        const double cut = h - x.extent() * (1.01 * theta) - slack;
        for (const Vec& v : x.vertices())
            if (dot(v, u) >= cut) pts.push_back(v + y.vertices()[j]);
    }
    return pts;
}

}  // namespace

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.dim() != b.dim()) throw GeometryError(ErrorKind::DimensionMismatch, "minkowski_sum operands differ in dimension");
    constexpr std::size_t kPruneAbove = 20000;
    std::vector<Vec> pts;
    if (a.size() * b.size() > kPruneAbove && !a.degenerate() && !b.degenerate()) {
        // Walk the cones of the operand with more vertices.
        pts = a.size() >= b.size() ? pruned_sum_candidates(b, a) : pruned_sum_candidates(a, b);
    } else {
        pts.reserve(a.size() * b.size());
        for (const Vec& v : a.vertices())
            for (const Vec& w : b.vertices()) pts.push_back(v + w);
    }
    return convex_hull(pts, a.dim(), {.allow_degenerate = true});
}

Polytope minkowski_sum(std::span<const Polytope> bodies) {
    if (bodies.empty()) throw GeometryError(ErrorKind::WrongArity, "minkowski_sum of no bodies");
    // Fold small bodies first so intermediate hulls stay small.
    std::vector<const Polytope*> order;
    for (const Polytope& p : bodies) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(),
                     [](const Polytope* x, const Polytope* y) { return x->size() < y->size(); });
    Polytope acc = *order[0];
    for (std::size_t i = 1; i < order.size(); ++i) acc = minkowski_sum(acc, *order[i]);
    return acc;
}

Polytope scale_translate(const Polytope& body, double lambda, const Vec& t, bool allow_degenerate) {
    if (!(lambda >= 0.0)) throw GeometryError(ErrorKind::InvalidArgument, "scale factor must be nonnegative");
    if (lambda == 0.0 && !allow_degenerate) {
        throw GeometryError(ErrorKind::DegenerateHull, "zero scale collapses the body to a point");
    }
    std::vector<Vec> pts;
    pts.reserve(body.size());
    for (const Vec& v : body.vertices()) {
        Vec w = lambda * v + t;
        if (body.dim() == 2) w[2] = 0.0;
        pts.push_back(w);
    }
    return convex_hull(pts, body.dim(), {.allow_degenerate = allow_degenerate || body.degenerate()});
}

Polytope translate(const Polytope& body, const Vec& t) { return scale_translate(body, 1.0, t, body.degenerate()); }

Polytope recentered(const Polytope& body) { return translate(body, -body.centroid()); }

double volume(const Polytope& body) { return body.volume(); }

BoundaryMeasures boundary_measures(const Polytope& body) {
    BoundaryMeasures m;
    if (body.dim() == 2) {
        if (body.affine_dim() == 1) {
            m.surface = 2.0 * norm(body.vertices()[1] - body.vertices()[0]);
        } else {
            for (const Facet& f : body.facets()) m.surface += f.measure;
        }
        return m;
    }
    double mean = 0.0;
    switch (body.affine_dim()) {
        case 0: break;
        case 1: mean = std::numbers::pi * norm(body.vertices()[1] - body.vertices()[0]); break;
        case 2:
            m.surface = 2.0 * body.flat_area();
            mean = 0.5 * std::numbers::pi * body.flat_perimeter();
            break;
        default:
            for (const Facet& f : body.facets()) m.surface += f.measure;
            for (const Edge& e : body.edges()) mean += e.length * e.exterior_angle;
            mean *= 0.5;
    }
    m.mean_curvature_integral = mean;
    return m;
}

bool contains(const Polytope& outer, const Polytope& inner, double slack) {
    if (outer.dim() != inner.dim()) throw GeometryError(ErrorKind::DimensionMismatch, "contains operands differ in dimension");
    if (outer.degenerate()) throw GeometryError(ErrorKind::DegenerateHull, "containing body must have interior");
    for (const Vec& v : inner.vertices())
        for (const Facet& f : outer.facets())
            if (dot(f.normal, v) > f.offset + slack) return false;
    return true;
}

double grid_distance(const Polytope& a, const Polytope& b, std::span<const Vec> grid) {
    if (a.dim() != b.dim()) throw GeometryError(ErrorKind::DimensionMismatch, "grid_distance operands differ in dimension");
    double best = 0.0;
    for (const Vec& u : grid) best = std::max(best, std::abs(support(a, u) - support(b, u)));
    return best;
}

double vertex_distance(const Polytope& a, const Polytope& b) {
    if (a.dim() != b.dim() || a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, norm(a.vertices()[i] - b.vertices()[i]));
    return best;
}

Polytope box(const Vec& lo, const Vec& hi, int dim) {
    std::vector<Vec> pts;
    const int corners = dim == 2 ? 4 : 8;
    for (int mask = 0; mask < corners; ++mask) {
        Vec p{};
        for (int k = 0; k < dim; ++k) p[k] = (mask >> k) & 1 ? hi[k] : lo[k];
        pts.push_back(p);
    }
    return convex_hull(pts, dim);
}

Polytope segment(const Vec& a, const Vec& b, int dim) {
    const std::vector<Vec> pts{a, b};
    return convex_hull(pts, dim, {.allow_degenerate = true});
}

Polytope point_body(const Vec& p, int dim) {
    const std::vector<Vec> pts{p};
    return convex_hull(pts, dim, {.allow_degenerate = true});
}

}  // namespace quermass
