#pragma once

#include <span>
#include <vector>

#include "quermass/polytope.hpp"

namespace quermass {

// Slots of a mixed projection body Pi(K_1, ..., K_{n-1}). A null slot stands
// for the unit ball, whose support is 1 on every direction; projection
// support values with ball slots are then exact (half the shadow perimeter,
// or pi for two ball slots).
struct ProjectionSpec {
    int dim = 0;
    std::vector<const Polytope*> bodies;  // exactly dim - 1 slots
    std::vector<Vec> grid;
};

// h(u) = n V(K_1, ..., K_{n-1}, [-u/2, u/2]): the shadow length of K on
// u-perp in 2D, the mixed area of the two shadows on u-perp in 3D. Even in u
// bit for bit.
double projection_support(std::span<const Polytope* const> bodies, int dim, const Vec& u);

// sphere_directions(level); in 2D the edge normals of every slot body,
// rotated by a quarter turn, are added so that polygonal projection bodies
// come out exact.
std::vector<Vec> projection_grid(int dim, int level, std::span<const Polytope* const> bodies);

// Wulff shape of the projection support on spec.grid. All-zero support
// (e.g. a point in a slot) yields the origin as a degenerate body.
Polytope projection_body(const ProjectionSpec& spec);

// Pi K.
Polytope projection_body(const Polytope& K, int level);
// Pi_j(K, L) = Pi(K[n-1-j], L[j]).
Polytope mixed_projection(const Polytope& K, const Polytope& L, int j, int level);
// Pi_j K = Pi(K[n-1-j], B[j]).
Polytope pi_i(const Polytope& K, int j, int level);

}  // namespace quermass
