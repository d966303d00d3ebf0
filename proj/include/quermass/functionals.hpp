#pragma once

#include <span>
#include <vector>

#include "quermass/polytope.hpp"

namespace quermass {

enum class BallMode { Inscribed, Circumscribed };

// Polytopal stand-in for the unit ball. Inscribed: a regular 8*2^level-gon
// (2D) or an icosahedron subdivided `level` times with vertices pushed to
// the sphere (3D). Circumscribed: the polar dual of the inscribed body.
struct BallApprox {
    int dim = 0;
    BallMode mode = BallMode::Inscribed;
    int level = 0;
    Polytope body;
};

inline constexpr int kMaxBallLevel2D = 12;
inline constexpr int kMaxBallLevel3D = 6;

// Cached; the returned reference stays valid for the program lifetime.
const BallApprox& ball_approx(int dim, BallMode mode, int level);

// Volume of the unit ball: pi in 2D, 4pi/3 in 3D.
double ball_volume(int dim);

// Unit directions covering the sphere: 64*2^level uniform angles in 2D,
// the vertices of the level-subdivided icosahedron in 3D.
std::vector<Vec> sphere_directions(int dim, int level);

// A value together with the half-width of its inscribed/circumscribed
// bracket. Exact quantities carry half_width == 0.
struct Bracketed {
    double value = 0.0;
    double half_width = 0.0;
};

// W_i(K) from closed forms. 2D: area, perimeter/2, pi. 3D: volume,
// surface/3, mean curvature integral/3, 4pi/3.
double quermassintegral(const Polytope& body, int i);

struct QuermassVector {
    int dim = 0;
    std::vector<double> values;       // W_0 .. W_dim
    std::vector<double> half_widths;  // bracket half-widths
};

// Independent estimate of all W_i by least-squares fitting the Steiner
// polynomial V(K + tB) = sum_i C(n,i) W_i t^i with polytopal balls.
QuermassVector steiner_fit(const Polytope& body, int level);

// V(K_1, ..., K_n) by inclusion-exclusion over Minkowski sums of subsets.
// Repeated bodies (same object or equal vertex data) are folded into
// scaled copies.
double mixed_volume(std::span<const Polytope* const> bodies);
double mixed_volume(std::span<const Polytope> bodies);

// W_i(K, L) = V(K[n-i-1], B[i], L), bracketed over inscribed and
// circumscribed balls.
Bracketed mixed_quermassintegral(const Polytope& K, const Polytope& L, int i, int level);

// The limit ((W_i(K + eps L) - W_i(K)) / ((n-i) eps)) as eps -> 0+, taken
// by Richardson extrapolation over exact Minkowski sums.
double mixed_quermass_difference_quotient(const Polytope& K, const Polytope& L, int i);

// Default grid for Wulff shapes: sphere_directions(level) plus the facet
// normals of each listed body.
std::vector<Vec> wulff_grid(int dim, int level, std::span<const Polytope* const> bodies);

// Intersection of the halfspaces {x : <x, u_k> <= h_k}. Every h_k must be
// positive (the origin is interior).
Polytope wulff_shape(std::span<const Vec> directions, std::span<const double> values, int dim);

// lambda . K +_p mu . L realised as the Wulff shape of
// (lambda h_K^p + mu h_L^p)^(1/p) on the grid.
Polytope firey_combine(double p, double lambda, const Polytope& K, double mu, const Polytope& L,
                       std::span<const Vec> grid);

// W_{p,i}(K, L) for every i in 0..n-1 on a fixed grid. Uses one-sided
// difference quotients at eps = 4h, 2h, h (h = 1e-3) with Richardson
// extrapolation; eps . L scales the support function by eps^(1/p).
std::vector<double> mixed_p_quermassintegrals(const Polytope& K, const Polytope& L, double p,
                                              std::span<const Vec> grid);
double mixed_p_quermassintegral(const Polytope& K, const Polytope& L, int i, double p, int level);

// Dw_i(K, D) = W_i(K) - W_i(D) for D inside K.
double quermass_difference(const Polytope& K, const Polytope& D, int i);

}  // namespace quermass
