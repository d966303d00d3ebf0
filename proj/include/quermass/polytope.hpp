#pragma once

#include <optional>
#include <span>
#include <vector>

#include "quermass/error.hpp"
#include "quermass/vec.hpp"

namespace quermass {

// Relative thresholds shared by every hull computation.
inline constexpr double kMergeRelTol = 1e-10;     // near-duplicate vertices, times diameter
inline constexpr double kCoplanarRelTol = 1e-9;   // 3D face merging, times diameter

// Supporting hyperplane of a facet: {x : <normal, x> = offset}. `measure` is
// the facet's (n-1)-volume (edge length in 2D, face area in 3D).
struct Facet {
    Vec normal{};
    double offset = 0.0;
    double measure = 0.0;
};

// An edge of a 3D polytope between two facets.
struct Edge {
    Vec a{};
    Vec b{};
    double length = 0.0;
    double exterior_angle = 0.0;  // angle between the two facet normals
};

struct BoundaryMeasures {
    double surface = 0.0;
    std::optional<double> mean_curvature_integral;  // 3D only
};

struct HullOptions {
    bool allow_degenerate = false;
};

// A convex polytope in dimension 2 or 3 stored by its extreme points.
//
// Vertex order is canonical: counter-clockwise from the lexicographic
// minimum in 2D, lexicographically sorted in 3D. Facets, edges, volume and
// centroid are derived once at construction. Degenerate bodies (a point, a
// segment, or a planar polygon in 3D) carry no facets and have volume 0.
class Polytope {
public:
    Polytope() = default;

    int dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    bool degenerate() const { return affine_dim_ < dim_; }
    int affine_dim() const { return affine_dim_; }

    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Edge>& edges() const { return edges_; }
    // Indices into facets() of the facets through each vertex. Empty for
    // degenerate bodies.
    const std::vector<std::vector<int>>& vertex_facets() const { return vertex_facets_; }

    double volume() const { return volume_; }
    const Vec& centroid() const { return centroid_; }
    // Bounding-box diagonal, an upper bound for the diameter.
    double extent() const { return extent_; }
    double diameter() const;

    // Planar measures of a degenerate 2-dimensional body in R^3.
    double flat_area() const { return flat_area_; }
    double flat_perimeter() const { return flat_perimeter_; }

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
    }

private:
    friend Polytope convex_hull(std::span<const Vec> points, int dim, HullOptions options);

    int dim_ = 0;
    int affine_dim_ = -1;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> vertex_facets_;
    double volume_ = 0.0;
    Vec centroid_{};
    double extent_ = 0.0;
    double flat_area_ = 0.0;
    double flat_perimeter_ = 0.0;
};

Polytope convex_hull(std::span<const Vec> points, int dim, HullOptions options = {});

double support(const Polytope& body, const Vec& direction);

Polytope minkowski_sum(const Polytope& a, const Polytope& b);
Polytope minkowski_sum(std::span<const Polytope> bodies);

// v -> lambda * v + t. lambda == 0 yields a point, accepted only with
// allow_degenerate.
Polytope scale_translate(const Polytope& body, double lambda, const Vec& t, bool allow_degenerate = false);
Polytope translate(const Polytope& body, const Vec& t);
// Translate so that the (volume) centroid sits at the origin.
Polytope recentered(const Polytope& body);

double volume(const Polytope& body);
BoundaryMeasures boundary_measures(const Polytope& body);

// True iff every vertex of inner lies in outer up to `slack`.
bool contains(const Polytope& outer, const Polytope& inner, double slack);

// max_u |h_a(u) - h_b(u)| over the given unit directions.
double grid_distance(const Polytope& a, const Polytope& b, std::span<const Vec> grid);

// Largest absolute vertex deviation after pairing canonical vertex lists;
// infinity when the vertex counts differ.
double vertex_distance(const Polytope& a, const Polytope& b);

// Axis-aligned boxes and simplices used throughout tests and examples.
Polytope box(const Vec& lo, const Vec& hi, int dim);
Polytope segment(const Vec& a, const Vec& b, int dim);
Polytope point_body(const Vec& p, int dim);

}  // namespace quermass
