#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <Eigen/Dense>

#include "quermass/functionals.hpp"

namespace quermass {

namespace {

constexpr double kRichardsonStep = 1e-3;

void check_dim(int dim) {
    if (dim != 2 && dim != 3) throw GeometryError(ErrorKind::DimensionMismatch, "only dimensions 2 and 3 are supported");
}

std::vector<Vec> icosphere(int level) {
    const double g = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec> v = {{-1, g, 0}, {1, g, 0},  {-1, -g, 0}, {1, -g, 0}, {0, -1, g},  {0, 1, g},
                          {0, -1, -g}, {0, 1, -g}, {g, 0, -1},  {g, 0, 1},  {-g, 0, -1}, {-g, 0, 1}};
    for (Vec& p : v) p = normalized(p);
    std::vector<std::array<int, 3>> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> mid;
        auto midpoint = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            v.push_back(normalized(v[a] + v[b]));
            const int idx = static_cast<int>(v.size()) - 1;
            mid.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int a = midpoint(f[0], f[1]), b = midpoint(f[1], f[2]), c = midpoint(f[2], f[0]);
            next.push_back({f[0], a, c});
            next.push_back({f[1], b, a});
            next.push_back({f[2], c, b});
            next.push_back({a, b, c});
        }
        faces = std::move(next);
    }
    return v;
}

std::vector<Vec> circle(int m, double phase) {
    std::vector<Vec> v(m);
    for (int k = 0; k < m; ++k) {
        const double a = 2.0 * std::numbers::pi * (k + phase) / m;
        v[k] = {std::cos(a), std::sin(a), 0.0};
    }
    return v;
}

int max_ball_level(int dim) { return dim == 2 ? kMaxBallLevel2D : kMaxBallLevel3D; }

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

// Volume of sum_k a_k K_k for positive integer weights.
double weighted_sum_volume(const std::vector<std::pair<int, const Polytope*>>& terms, int dim) {
    if (terms.size() == 1) return std::pow(terms[0].first, dim) * terms[0].second->volume();
    std::vector<std::pair<int, const Polytope*>> order = terms;
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.second->size() < y.second->size(); });
    auto scaled = [](const std::pair<int, const Polytope*>& t) {
        return t.first == 1 ? *t.second : scale_translate(*t.second, t.first, {}, true);
    };
    Polytope hull = scaled(order[0]);
    for (std::size_t t = 1; t < order.size(); ++t) hull = minkowski_sum(hull, scaled(order[t]));
    return hull.volume();
}

// Richardson limit of q(eps) at eps -> 0+ from samples at h, 2h, 4h,
// first-order error model with ratio 2.
double richardson(double qh, double q2h, double q4h) {
    const double r1h = 2.0 * qh - q2h;
    const double r12h = 2.0 * q2h - q4h;
    return (4.0 * r1h - r12h) / 3.0;
}

void check_index(int i, int lo, int hi) {
    if (i < lo || i > hi) throw GeometryError(ErrorKind::IndexOutOfRange, "quermassintegral index out of range");
}

}  // namespace

double ball_volume(int dim) {
    check_dim(dim);
    return dim == 2 ? std::numbers::pi : 4.0 * std::numbers::pi / 3.0;
}

std::vector<Vec> sphere_directions(int dim, int level) {
    check_dim(dim);
    if (level < 0) throw GeometryError(ErrorKind::InvalidArgument, "negative grid level");
    if (level > max_ball_level(dim)) throw GeometryError(ErrorKind::LevelTooHigh, "grid level too high");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Vec>> cache;
    std::lock_guard lock(mu);
    auto [it, inserted] = cache.try_emplace({dim, level});
    if (inserted) it->second = dim == 2 ? circle(64 << level, 0.0) : icosphere(level);
    return it->second;
}

const BallApprox& ball_approx(int dim, BallMode mode, int level) {
    check_dim(dim);
    if (level < 0) throw GeometryError(ErrorKind::InvalidArgument, "negative ball level");
    if (level > max_ball_level(dim)) throw GeometryError(ErrorKind::LevelTooHigh, "ball level too high");
    static std::recursive_mutex mu;
    static std::map<std::tuple<int, int, int>, BallApprox> cache;
    std::lock_guard lock(mu);
    const auto key = std::make_tuple(dim, static_cast<int>(mode), level);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const std::vector<Vec> verts = dim == 2 ? circle(8 << level, 0.0) : icosphere(level);
    BallApprox b{dim, mode, level, {}};
    if (mode == BallMode::Inscribed) {
        b.body = convex_hull(verts, dim);
    } else {
        const std::vector<double> ones(verts.size(), 1.0);
        b.body = wulff_shape(verts, ones, dim);
    }
    return cache.emplace(key, std::move(b)).first->second;
}

double quermassintegral(const Polytope& body, int i) {
    const int n = body.dim();
    check_index(i, 0, n);
    if (i == 0) return body.volume();
    if (i == n) return ball_volume(n);
    const BoundaryMeasures m = boundary_measures(body);
    if (n == 2) return m.surface / 2.0;
    return i == 1 ? m.surface / 3.0 : *m.mean_curvature_integral / 3.0;
}

QuermassVector steiner_fit(const Polytope& body, int level) {
    const int n = body.dim();
    const double d = body.size() > 1 ? body.diameter() : 1.0;
    constexpr int kSamples = 8;  // s = k/8, k = 1..8; includes 1/4, 1/2, 3/4, 1
    std::array<std::vector<double>, 2> fits;
    for (int mode = 0; mode < 2; ++mode) {
        const Polytope& ball = ball_approx(n, mode == 0 ? BallMode::Inscribed : BallMode::Circumscribed, level).body;
        Eigen::MatrixXd A(kSamples + 1, n + 1);
        Eigen::VectorXd y(kSamples + 1);
        for (int k = 0; k <= kSamples; ++k) {
            const double s = static_cast<double>(k) / kSamples;
            const Polytope tb = scale_translate(ball, s * d, {}, true);
            y(k) = k == 0 ? body.volume() : minkowski_sum(body, tb).volume();
            for (int j = 0; j <= n; ++j) A(k, j) = std::pow(s, j);
        }
        const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
        fits[mode].resize(n + 1);
        for (int j = 0; j <= n; ++j) fits[mode][j] = c(j) / (binom(n, j) * std::pow(d, j));
    }
    QuermassVector out{n, std::vector<double>(n + 1), std::vector<double>(n + 1)};
    for (int j = 0; j <= n; ++j) {
        out.values[j] = 0.5 * (fits[0][j] + fits[1][j]);
        out.half_widths[j] = 0.5 * std::abs(fits[1][j] - fits[0][j]);
    }
    return out;
}

double mixed_volume(std::span<const Polytope* const> bodies) {
    if (bodies.empty()) throw GeometryError(ErrorKind::WrongArity, "mixed_volume needs bodies");
    const int n = bodies[0]->dim();
    for (const Polytope* b : bodies)
        if (b->dim() != n) throw GeometryError(ErrorKind::DimensionMismatch, "mixed_volume operands differ in dimension");
    if (static_cast<int>(bodies.size()) != n) throw GeometryError(ErrorKind::WrongArity, "mixed_volume needs exactly dim bodies");

    std::vector<const Polytope*> distinct;
    std::vector<int> mult;
    for (const Polytope* b : bodies) {
        auto it = std::find_if(distinct.begin(), distinct.end(), [&](const Polytope* d) { return d == b || *d == *b; });
        if (it == distinct.end()) {
            distinct.push_back(b);
            mult.push_back(1);
        } else {
            ++mult[it - distinct.begin()];
        }
    }
    if (distinct.size() == 1) return distinct[0]->volume();

    const int r = static_cast<int>(distinct.size());
    std::vector<int> a(r, 0);
    double total = 0.0;
    while (true) {
        int k = 0;
        while (k < r && a[k] == mult[k]) a[k++] = 0;
        if (k == r) break;
        ++a[k];
        int size = 0;
        double coef = 1.0;
        std::vector<std::pair<int, const Polytope*>> terms;
        for (int j = 0; j < r; ++j) {
            size += a[j];
            coef *= binom(mult[j], a[j]);
            if (a[j] > 0) terms.emplace_back(a[j], distinct[j]);
        }
        const double sign = (n - size) % 2 == 0 ? 1.0 : -1.0;
        total += sign * coef * weighted_sum_volume(terms, n);
    }
    double fact = 1.0;
    for (int j = 2; j <= n; ++j) fact *= j;
    return total / fact;
}

double mixed_volume(std::span<const Polytope> bodies) {
    std::vector<const Polytope*> ptrs;
    for (const Polytope& b : bodies) ptrs.push_back(&b);
    return mixed_volume(std::span<const Polytope* const>(ptrs));
}

Bracketed mixed_quermassintegral(const Polytope& K, const Polytope& L, int i, int level) {
    const int n = K.dim();
    if (L.dim() != n) throw GeometryError(ErrorKind::DimensionMismatch, "mixed_quermassintegral operands differ in dimension");
    check_index(i, 0, n - 1);
    auto eval = [&](const Polytope* ball) {
        std::vector<const Polytope*> args;
        for (int k = 0; k < n - i - 1; ++k) args.push_back(&K);
        for (int k = 0; k < i; ++k) args.push_back(ball);
        args.push_back(&L);
        return mixed_volume(std::span<const Polytope* const>(args));
    };
    if (i == 0) return {eval(nullptr), 0.0};
    const double lo = eval(&ball_approx(n, BallMode::Inscribed, level).body);
    const double hi = eval(&ball_approx(n, BallMode::Circumscribed, level).body);
    return {0.5 * (lo + hi), 0.5 * std::abs(hi - lo)};
}

double mixed_quermass_difference_quotient(const Polytope& K, const Polytope& L, int i) {
    const int n = K.dim();
    check_index(i, 0, n - 1);
    const double w0 = quermassintegral(K, i);
    auto q = [&](double eps) {
        const Polytope s = minkowski_sum(K, scale_translate(L, eps, {}, true));
        return (quermassintegral(s, i) - w0) / ((n - i) * eps);
    };
    const double h = kRichardsonStep;
    return richardson(q(h), q(2 * h), q(4 * h));
}

std::vector<Vec> wulff_grid(int dim, int level, std::span<const Polytope* const> bodies) {
    std::vector<Vec> grid = sphere_directions(dim, level);
    for (const Polytope* b : bodies) {
        if (b->dim() != dim) throw GeometryError(ErrorKind::DimensionMismatch, "grid body has the wrong dimension");
        for (const Facet& f : b->facets()) grid.push_back(f.normal);
    }
    // Normals of the full sum make p = 1 combinations exact in 3D, where
    // edge-edge facets appear.
    if (bodies.size() > 1) {
        std::vector<Polytope> parts;
        for (const Polytope* b : bodies) parts.push_back(*b);
        const Polytope total = minkowski_sum(parts);
        for (const Facet& f : total.facets()) grid.push_back(f.normal);
    }
    std::sort(grid.begin(), grid.end(), lex_less);
    std::vector<Vec> out;
    for (const Vec& u : grid)
        if (out.empty() || norm(u - out.back()) > 1e-12) out.push_back(u);
    return out;
}

Polytope wulff_shape(std::span<const Vec> directions, std::span<const double> values, int dim) {
    check_dim(dim);
    if (directions.size() != values.size()) throw GeometryError(ErrorKind::InvalidArgument, "directions and values differ in length");
    std::vector<Vec> polar;
    polar.reserve(directions.size());
    for (std::size_t k = 0; k < directions.size(); ++k) {
        if (!(values[k] > 0.0)) throw GeometryError(ErrorKind::OriginNotInterior, "support values must be positive");
        polar.push_back(directions[k] / values[k]);
    }
    Polytope q;
    try {
        q = convex_hull(polar, dim);
    } catch (const GeometryError&) {
        throw GeometryError(ErrorKind::GridTooCoarse, "directions do not span the space");
    }
    // Each facet {<n, y> = d} of the polar body is a vertex n/d of the shape.
    std::vector<Vec> verts;
    verts.reserve(q.facets().size());
    const double floor = 1e-12 * q.extent();
    for (const Facet& f : q.facets()) {
        if (f.offset <= floor) throw GeometryError(ErrorKind::GridTooCoarse, "directions do not surround the origin");
        verts.push_back(f.normal / f.offset);
    }
    return convex_hull(verts, dim);
}

Polytope firey_combine(double p, double lambda, const Polytope& K, double mu, const Polytope& L, std::span<const Vec> grid) {
    const int n = K.dim();
    if (L.dim() != n) throw GeometryError(ErrorKind::DimensionMismatch, "firey_combine operands differ in dimension");
    if (!(p >= 1.0)) throw GeometryError(ErrorKind::InvalidArgument, "p must be at least 1");
    if (!(lambda >= 0.0) || !(mu >= 0.0) || !(lambda + mu > 0.0)) {
        throw GeometryError(ErrorKind::InvalidArgument, "coefficients must be nonnegative and not both zero");
    }
    const std::size_t min_grid = n == 2 ? 256 : 642;
    if (grid.size() < min_grid) throw GeometryError(ErrorKind::GridTooCoarse, "grid has too few directions");
    std::vector<double> h(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double hk = support(K, grid[k]);
        const double hl = support(L, grid[k]);
        if (!(hk > 0.0) || !(hl > 0.0)) throw GeometryError(ErrorKind::OriginNotInterior, "bodies must contain the origin in their interior");
        h[k] = p == 1.0 ? lambda * hk + mu * hl : std::pow(lambda * std::pow(hk, p) + mu * std::pow(hl, p), 1.0 / p);
    }
    return wulff_shape(grid, h, n);
}

std::vector<double> mixed_p_quermassintegrals(const Polytope& K, const Polytope& L, double p, std::span<const Vec> grid) {
    const int n = K.dim();
    const double h = kRichardsonStep;
    std::array<Polytope, 3> shapes;
    for (int s = 0; s < 3; ++s) shapes[s] = firey_combine(p, 1.0, K, h * (1 << s), L, grid);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double w0 = quermassintegral(K, i);
        double q[3];
        for (int s = 0; s < 3; ++s) q[s] = (quermassintegral(shapes[s], i) - w0) / (h * (1 << s));
        out[i] = p / (n - i) * richardson(q[0], q[1], q[2]);
    }
    return out;
}

double mixed_p_quermassintegral(const Polytope& K, const Polytope& L, int i, double p, int level) {
    check_index(i, 0, K.dim() - 1);
    const Polytope* bodies[] = {&K, &L};
    const std::vector<Vec> grid = wulff_grid(K.dim(), level, bodies);
    return mixed_p_quermassintegrals(K, L, p, grid)[i];
}

double quermass_difference(const Polytope& K, const Polytope& D, int i) {
    check_index(i, 0, K.dim() - 1);
    if (!contains(K, D, 1e-9 * K.diameter())) throw GeometryError(ErrorKind::NotNested, "D is not contained in K");
    return quermassintegral(K, i) - quermassintegral(D, i);
}

}  // namespace quermass
