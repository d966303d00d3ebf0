#include <algorithm>
#include <cmath>
#include <numbers>

#include "quermass/functionals.hpp"
#include "quermass/projection.hpp"

namespace quermass {

namespace {

// Representative of {u, -u}: first nonzero coordinate positive.
Vec canonical_sign(const Vec& u) {
    for (int k = 0; k < 3; ++k) {
        if (u[k] > 0.0) return u;
        if (u[k] < 0.0) return -u;
    }
    return u;
}

struct Shadow {
    Polytope body;  // 2D coordinates in the basis (e, f) of u-perp
    Vec e{}, f{};
};

Shadow shadow(const Polytope& K, const Vec& u) {
    const Vec a = std::abs(u[0]) < 0.6 ? Vec{1, 0, 0} : Vec{0, 1, 0};
    Shadow s;
    s.e = normalized(cross(u, a));
    s.f = cross(u, s.e);
    std::vector<Vec> pts;
    pts.reserve(K.size());
    for (const Vec& v : K.vertices()) pts.push_back({dot(v, s.e), dot(v, s.f), 0.0});
    s.body = convex_hull(pts, 2, {.allow_degenerate = true});
    return s;
}

double shadow_perimeter(const Polytope& p) {
    if (p.affine_dim() == 1) return 2.0 * norm(p.vertices()[1] - p.vertices()[0]);
    double per = 0.0;
    for (const Facet& fc : p.facets()) per += fc.measure;
    return per;
}

void check_slots(std::span<const Polytope* const> bodies, int dim) {
    if (dim != 2 && dim != 3) throw GeometryError(ErrorKind::DimensionMismatch, "only dimensions 2 and 3 are supported");
    if (static_cast<int>(bodies.size()) != dim - 1) throw GeometryError(ErrorKind::WrongArity, "projection body needs dim-1 slots");
    for (const Polytope* b : bodies)
        if (b && b->dim() != dim) throw GeometryError(ErrorKind::DimensionMismatch, "slot body has the wrong dimension");
}

}  // namespace

double projection_support(std::span<const Polytope* const> bodies, int dim, const Vec& u_in) {
    check_slots(bodies, dim);
    const Vec u = canonical_sign(u_in);
    if (dim == 2) {
        if (!bodies[0]) return 2.0;
        const Vec w{-u[1], u[0], 0.0};
        return support(*bodies[0], w) + support(*bodies[0], -w);
    }
    const Polytope* k1 = bodies[0];
    const Polytope* k2 = bodies[1];
    if (!k1 && !k2) return std::numbers::pi;
    if (!k1) std::swap(k1, k2);
    const Shadow s = shadow(*k1, u);
    if (!k2) return 0.5 * shadow_perimeter(s.body);
    if (k1 == k2 || *k1 == *k2) return s.body.volume();
    if (s.body.affine_dim() < 2) {
        // A segment shadow contributes its length times the width of the other shadow.
        if (s.body.affine_dim() == 0) return 0.0;
        const Vec d = s.body.vertices()[1] - s.body.vertices()[0];
        const Vec n3 = normalized(-d[1] * s.e + d[0] * s.f);
        return 0.5 * norm(d) * (support(*k2, n3) + support(*k2, -n3));
    }
    double sum = 0.0;
    for (const Facet& fc : s.body.facets()) {
        const Vec n3 = fc.normal[0] * s.e + fc.normal[1] * s.f;
        sum += fc.measure * support(*k2, n3);
    }
    return 0.5 * sum;
}

std::vector<Vec> projection_grid(int dim, int level, std::span<const Polytope* const> bodies) {
    std::vector<Vec> grid = sphere_directions(dim, level);
    if (dim == 2) {
        for (const Polytope* b : bodies) {
            if (!b) continue;
            for (const Facet& f : b->facets()) {
                grid.push_back({-f.normal[1], f.normal[0], 0.0});
                grid.push_back({f.normal[1], -f.normal[0], 0.0});
            }
        }
        std::sort(grid.begin(), grid.end(), lex_less);
        std::vector<Vec> out;
        for (const Vec& u : grid)
            if (out.empty() || norm(u - out.back()) > 1e-12) out.push_back(u);
        return out;
    }
    return grid;
}

Polytope projection_body(const ProjectionSpec& spec) {
    check_slots(spec.bodies, spec.dim);
    const std::size_t min_grid = spec.dim == 2 ? 256 : 642;
    if (spec.grid.size() < min_grid) throw GeometryError(ErrorKind::GridTooCoarse, "grid has too few directions");
    std::vector<double> h(spec.grid.size());
    double top = 0.0;
    for (std::size_t k = 0; k < spec.grid.size(); ++k) {
        h[k] = projection_support(spec.bodies, spec.dim, spec.grid[k]);
        top = std::max(top, h[k]);
    }
    if (top <= 0.0) return point_body({0, 0, 0}, spec.dim);
    for (double& v : h)
        if (v <= 1e-14 * top) throw GeometryError(ErrorKind::DegenerateHull, "projection body has empty interior");
    return wulff_shape(spec.grid, h, spec.dim);
}

Polytope projection_body(const Polytope& K, int level) {
    ProjectionSpec spec{K.dim(), std::vector<const Polytope*>(K.dim() - 1, &K), {}};
    spec.grid = projection_grid(K.dim(), level, spec.bodies);
    return projection_body(spec);
}

Polytope mixed_projection(const Polytope& K, const Polytope& L, int j, int level) {
    const int n = K.dim();
    if (L.dim() != n) throw GeometryError(ErrorKind::DimensionMismatch, "mixed_projection operands differ in dimension");
    if (j < 0 || j > n - 1) throw GeometryError(ErrorKind::IndexOutOfRange, "mixed projection index out of range");
    ProjectionSpec spec{n, {}, {}};
    for (int k = 0; k < n - 1 - j; ++k) spec.bodies.push_back(&K);
    for (int k = 0; k < j; ++k) spec.bodies.push_back(&L);
    spec.grid = projection_grid(n, level, spec.bodies);
    return projection_body(spec);
}

Polytope pi_i(const Polytope& K, int j, int level) {
    const int n = K.dim();
    if (j < 0 || j > n - 1) throw GeometryError(ErrorKind::IndexOutOfRange, "projection index out of range");
    ProjectionSpec spec{n, {}, {}};
    for (int k = 0; k < n - 1 - j; ++k) spec.bodies.push_back(&K);
    for (int k = 0; k < j; ++k) spec.bodies.push_back(nullptr);
    spec.grid = projection_grid(n, level, spec.bodies);
    return projection_body(spec);
}

}  // namespace quermass
