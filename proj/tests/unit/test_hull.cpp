#include <doctest.h>

#include <cmath>
#include <random>

#include "quermass/functionals.hpp"
#include "quermass/polytope.hpp"

using namespace quermass;

namespace {

std::vector<Vec> cube_points() {
    std::vector<Vec> pts;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) pts.push_back({double(x), double(y), double(z)});
    return pts;
}

// Brute-force Minkowski sum: hull of all pairwise vertex sums.
Polytope brute_sum(const Polytope& a, const Polytope& b) {
    std::vector<Vec> pts;
    for (const Vec& x : a.vertices())
        for (const Vec& y : b.vertices()) pts.push_back(x + y);
    return convex_hull(pts, a.dim());
}

std::vector<Vec> gaussian_cloud(std::mt19937_64& rng, int n, int dim) {
    std::normal_distribution<double> g;
    std::vector<Vec> pts(n);
    for (Vec& p : pts)
        for (int k = 0; k < dim; ++k) p[k] = g(rng);
    return pts;
}

}  // namespace

TEST_CASE("cube hull drops interior and duplicate points") {
    std::vector<Vec> pts = cube_points();
    pts.push_back({0.5, 0.5, 0.5});
    pts.push_back({0.5, 0.5, 1.0});  // on a face
    pts.push_back({1.0, 1.0, 1.0});
    const Polytope c = convex_hull(pts, 3);
    CHECK(c.size() == 8);
    CHECK(c.facets().size() == 6);
    CHECK(c.edges().size() == 12);
    CHECK(c.volume() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.centroid()[0] == doctest::Approx(0.5));
    CHECK(c.centroid()[2] == doctest::Approx(0.5));
    for (const auto& vf : c.vertex_facets()) CHECK(vf.size() == 3);
}

TEST_CASE("lattice points on cube faces collapse to the corners") {
    std::vector<Vec> pts;
    for (int x = 0; x <= 3; ++x)
        for (int y = 0; y <= 3; ++y)
            for (int z = 0; z <= 3; ++z) pts.push_back({double(x), double(y), double(z)});
    const Polytope c = convex_hull(pts, 3);
    CHECK(c.size() == 8);
    CHECK(c.facets().size() == 6);
    CHECK(c.volume() == doctest::Approx(27.0).epsilon(1e-14));
}

TEST_CASE("unit simplex volumes") {
    const Polytope t3 = convex_hull(std::vector<Vec>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
    CHECK(t3.volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    const Polytope t2 = convex_hull(std::vector<Vec>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, 2);
    CHECK(t2.volume() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("2D vertices run counter-clockwise from the lexicographic minimum") {
    const Polytope p = convex_hull(std::vector<Vec>{{1, 1, 0}, {0, 1, 0}, {1, 0, 0}, {0, 0, 0}, {0.5, 0.2, 0}}, 2);
    REQUIRE(p.size() == 4);
    CHECK(p.vertices()[0] == Vec{0, 0, 0});
    CHECK(p.vertices()[1] == Vec{1, 0, 0});
    CHECK(p.vertices()[2] == Vec{1, 1, 0});
    CHECK(p.vertices()[3] == Vec{0, 1, 0});
}

TEST_CASE("degenerate inputs") {
    const std::vector<Vec> line{{0, 0, 0}, {1, 1, 0}, {2, 2, 0}};
    CHECK_THROWS_AS(convex_hull(line, 2), GeometryError);
    const Polytope seg = convex_hull(line, 2, {.allow_degenerate = true});
    CHECK(seg.degenerate());
    CHECK(seg.affine_dim() == 1);
    CHECK(seg.size() == 2);
    CHECK(seg.volume() == 0.0);

    const std::vector<Vec> square{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
    CHECK_THROWS_AS(convex_hull(square, 3), GeometryError);
    const Polytope flat = convex_hull(square, 3, {.allow_degenerate = true});
    CHECK(flat.affine_dim() == 2);
    CHECK(flat.flat_area() == doctest::Approx(1.0));
    CHECK(flat.flat_perimeter() == doctest::Approx(4.0));

    const Polytope pt = point_body({1, 2, 3}, 3);
    CHECK(pt.affine_dim() == 0);
    CHECK(pt.size() == 1);
}

TEST_CASE("nearly coplanar points stay convex") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> tiny(-1e-13, 1e-13);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Vec> pts = cube_points();
        for (int k = 0; k < 200; ++k) {
            Vec p{u(rng), u(rng), u(rng)};
            p[k % 3] = (k / 3) % 2 + tiny(rng);  // on a face, jittered
            pts.push_back(p);
        }
        const Polytope c = convex_hull(pts, 3);
        CHECK(c.volume() == doctest::Approx(1.0).epsilon(1e-9));
        for (const Vec& p : pts)
            for (const Facet& f : c.facets()) CHECK(dot(f.normal, p) <= f.offset + 1e-9);
    }
}

TEST_CASE("random hulls satisfy Euler's formula and contain their inputs") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        const std::vector<Vec> pts = gaussian_cloud(rng, 10 + 7 * rep, 3);
        const Polytope h = convex_hull(pts, 3);
        const long v = static_cast<long>(h.size());
        const long e = static_cast<long>(h.edges().size());
        const long f = static_cast<long>(h.facets().size());
        CHECK(v - e + f == 2);
        for (const Vec& p : pts)
            for (const Facet& fc : h.facets()) CHECK(dot(fc.normal, p) <= fc.offset + 1e-9);
        double area = 0.0;
        for (const Facet& fc : h.facets()) area += fc.measure;
        CHECK(boundary_measures(h).surface == doctest::Approx(area));
    }
}

TEST_CASE("pruned Minkowski sums match the brute-force hull") {
    std::mt19937_64 rng(9);
    const Polytope& ball = ball_approx(3, BallMode::Inscribed, 4).body;  // 2562 vertices
    const Polytope& outer = ball_approx(3, BallMode::Circumscribed, 4).body;
    for (int rep = 0; rep < 6; ++rep) {
        const Polytope k = convex_hull(gaussian_cloud(rng, 60, 3), 3);
        REQUIRE(k.size() * ball.size() > 20000);
        const Polytope s = minkowski_sum(k, rep % 2 ? outer : ball);
        const Polytope b = brute_sum(k, rep % 2 ? outer : ball);
        CHECK(vertex_distance(s, b) < 1e-9);
        CHECK(s.volume() == doctest::Approx(b.volume()).epsilon(1e-12));
    }
}

TEST_CASE("support of a sum is the sum of supports") {
    std::mt19937_64 rng(3);
    const Polytope a = convex_hull(gaussian_cloud(rng, 30, 3), 3);
    const Polytope b = convex_hull(gaussian_cloud(rng, 30, 3), 3);
    const Polytope s = minkowski_sum(a, b);
    for (const Vec& u : sphere_directions(3, 2)) CHECK(support(s, u) == doctest::Approx(support(a, u) + support(b, u)));
}

TEST_CASE("boxes, containment and distances") {
    const Polytope b = box({0, 0, 0}, {1, 2, 3}, 3);
    CHECK(b.volume() == doctest::Approx(6.0));
    CHECK(contains(b, box({0.1, 0.1, 0.1}, {0.9, 1.9, 2.9}, 3), 0.0));
    CHECK_FALSE(contains(b, box({0.1, 0.1, 0.1}, {1.1, 1.9, 2.9}, 3), 1e-9));
    const Polytope t = translate(b, {0.5, 0, 0});
    CHECK(grid_distance(b, t, sphere_directions(3, 1)) == doctest::Approx(0.5));
    CHECK(vertex_distance(b, t) == doctest::Approx(0.5));
    const Polytope r = recentered(b);
    CHECK(std::abs(r.centroid()[0]) < 1e-14);
    CHECK(std::abs(r.centroid()[2]) < 1e-14);
    CHECK_THROWS_AS(scale_translate(b, 0.0, {}), GeometryError);
    CHECK(scale_translate(b, 0.0, {}, true).size() == 1);
}
