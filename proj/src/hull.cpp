#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <vector>

#include "quermass/polytope.hpp"

namespace quermass {

namespace {

double bbox_diagonal(std::span<const Vec> pts, int dim) {
    Vec lo = pts[0], hi = pts[0];
    for (const Vec& p : pts) {
        for (int k = 0; k < dim; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    return norm(hi - lo);
}

// Andrew's monotone chain. Returns a counter-clockwise ring starting at the
// lexicographic minimum; points within `eps` of a supporting line are dropped.
std::vector<Vec> ring2d(std::vector<Vec> pts, double eps) {
    std::sort(pts.begin(), pts.end(), lex_less);
    if (pts.size() < 3) return pts;
    auto turns_left = [eps](const Vec& a, const Vec& b, const Vec& c) {
        const double base = std::hypot(c[0] - a[0], c[1] - a[1]);
        return orient2d(a, b, c) > eps * base;
    };
    std::vector<Vec> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    // Collapse near-duplicates that survived at the chain joints.
    std::vector<Vec> out;
    for (const Vec& p : hull) {
        if (out.empty() || std::hypot(p[0] - out.back()[0], p[1] - out.back()[1]) > eps) out.push_back(p);
    }
    while (out.size() > 1 && std::hypot(out[0][0] - out.back()[0], out[0][1] - out.back()[1]) <= eps) {
        out.pop_back();
    }
    return out;
}

// Exact sign of det[b - a; c - a; d - a] (positive when d lies on the side
// the normal (b - a) x (c - a) points to). A floating-point filter answers
// almost every call; the rest use expansion arithmetic.
namespace exact {

// Nonoverlapping components sorted by increasing magnitude, zeros dropped.
// The capacity covers the 3x3 determinant of exact coordinate differences.
struct Expansion {
    static constexpr int kCap = 200;
    int n = 0;
    double c[kCap + 1];
};

inline void assign(Expansion& h, const Expansion& e) {
    h.n = e.n;
    std::copy(e.c, e.c + e.n, h.c);
}

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    y = b - (x - a);
}

inline void two_prod(double a, double b, double& x, double& y) {
    x = a * b;
    y = std::fma(a, b, -x);
}

void add(const Expansion& e, const Expansion& f, Expansion& h) {
    if (e.n == 0) {
        assign(h, f);
        return;
    }
    if (f.n == 0) {
        assign(h, e);
        return;
    }
    int ei = 0, fi = 0;
    double en = e.c[0], fn = f.c[0];
    double q, qn, hh;
    auto take_e = [&] { return (fn > en) == (fn > -en); };
    if (take_e()) {
        q = en;
        en = e.c[++ei];
    } else {
        q = fn;
        fn = f.c[++fi];
    }
    h.n = 0;
    if (ei < e.n && fi < f.n) {
        if (take_e()) {
            fast_two_sum(en, q, qn, hh);
            en = e.c[++ei];
        } else {
            fast_two_sum(fn, q, qn, hh);
            fn = f.c[++fi];
        }
        q = qn;
        if (hh != 0.0) h.c[h.n++] = hh;
        while (ei < e.n && fi < f.n) {
            if (take_e()) {
                two_sum(q, en, qn, hh);
                en = e.c[++ei];
            } else {
                two_sum(q, fn, qn, hh);
                fn = f.c[++fi];
            }
            q = qn;
            if (hh != 0.0) h.c[h.n++] = hh;
        }
    }
    while (ei < e.n) {
        two_sum(q, en, qn, hh);
        en = e.c[++ei];
        q = qn;
        if (hh != 0.0) h.c[h.n++] = hh;
    }
    while (fi < f.n) {
        two_sum(q, fn, qn, hh);
        fn = f.c[++fi];
        q = qn;
        if (hh != 0.0) h.c[h.n++] = hh;
    }
    if (q != 0.0 || h.n == 0) h.c[h.n++] = q;
}

void scale(const Expansion& e, double b, Expansion& h) {
    h.n = 0;
    double q, hh, p, lo, s;
    two_prod(e.c[0], b, q, hh);
    if (hh != 0.0) h.c[h.n++] = hh;
    for (int k = 1; k < e.n; ++k) {
        two_prod(e.c[k], b, p, lo);
        two_sum(q, lo, s, hh);
        if (hh != 0.0) h.c[h.n++] = hh;
        fast_two_sum(p, s, q, hh);
        if (hh != 0.0) h.c[h.n++] = hh;
    }
    if (q != 0.0 || h.n == 0) h.c[h.n++] = q;
}

void mul(const Expansion& e, const Expansion& f, Expansion& h) {
    Expansion term, acc;
    h.n = 0;
    for (int k = 0; k < f.n; ++k) {
        scale(e, f.c[k], term);
        add(h, term, acc);
        assign(h, acc);
    }
}

void negate(Expansion& e) {
    for (int k = 0; k < e.n; ++k) e.c[k] = -e.c[k];
}

Expansion diff(double a, double b) {
    Expansion e;
    double x, y;
    two_sum(a, -b, x, y);
    if (y != 0.0) e.c[e.n++] = y;
    e.c[e.n++] = x;
    return e;
}

int sign(const Expansion& e) {
    for (int k = e.n - 1; k >= 0; --k)
        if (e.c[k] != 0.0) return e.c[k] > 0.0 ? 1 : -1;
    return 0;
}

// a*b - c*d for expansions, into h.
void cross_term(const Expansion& a, const Expansion& b, const Expansion& c, const Expansion& d, Expansion& h) {
    Expansion p, q;
    mul(a, b, p);
    mul(c, d, q);
    negate(q);
    add(p, q, h);
}

int orient(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
    const double bx = b[0] - a[0], by = b[1] - a[1], bz = b[2] - a[2];
    const double cx = c[0] - a[0], cy = c[1] - a[1], cz = c[2] - a[2];
    const double dx = d[0] - a[0], dy = d[1] - a[1], dz = d[2] - a[2];
    const double m1 = cy * dz - cz * dy;
    const double m2 = cx * dz - cz * dx;
    const double m3 = cx * dy - cy * dx;
    const double det = bx * m1 - by * m2 + bz * m3;
    const double perm = std::abs(bx) * (std::abs(cy * dz) + std::abs(cz * dy)) +
                        std::abs(by) * (std::abs(cx * dz) + std::abs(cz * dx)) +
                        std::abs(bz) * (std::abs(cx * dy) + std::abs(cy * dx));
    constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;
    constexpr double kBound = (7.0 + 56.0 * kEps) * kEps;
    if (det > kBound * perm) return 1;
    if (-det > kBound * perm) return -1;
    if (perm == 0.0) return 0;

    const Expansion ex[3] = {diff(b[0], a[0]), diff(b[1], a[1]), diff(b[2], a[2])};
    const Expansion ey[3] = {diff(c[0], a[0]), diff(c[1], a[1]), diff(c[2], a[2])};
    const Expansion ez[3] = {diff(d[0], a[0]), diff(d[1], a[1]), diff(d[2], a[2])};
    Expansion n1, n2, n3, t1, t2, t3, s, total;
    cross_term(ey[1], ez[2], ey[2], ez[1], n1);
    cross_term(ey[0], ez[2], ey[2], ez[0], n2);
    cross_term(ey[0], ez[1], ey[1], ez[0], n3);
    mul(ex[0], n1, t1);
    mul(ex[1], n2, t2);
    negate(t2);
    mul(ex[2], n3, t3);
    add(t1, t2, s);
    add(s, t3, total);
    return sign(total);
}

}  // namespace exact

struct Tri {
    int v[3];
    int nb[3];  // nb[k] is across edge (v[k], v[k+1])
    Vec n;
    double d;
    std::vector<int> outside;
    bool alive = true;
    int mark = -1;
};

class Hull3 {
public:
    Hull3(std::span<const Vec> pts, double eps) : pts_(pts), eps_(eps) {}

    // Returns the affine rank found while seeding (3 on success). On rank < 3
    // the seed indices describe the degenerate span.
    int build();
    const std::vector<Tri>& tris() const { return tris_; }
    std::array<int, 4> seed() const { return seed_; }

private:
    double dist(const Tri& t, int p) const { return dot(t.n, pts_[p]) - t.d; }
    bool above(const Tri& t, int p) const {
        return exact::orient(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], pts_[p]) > 0;
    }
    int make_tri(int a, int b, int c);
    void set_plane(Tri& t);

    std::span<const Vec> pts_;
    double eps_;
    std::vector<Tri> tris_;
    std::array<int, 4> seed_{-1, -1, -1, -1};
};

void Hull3::set_plane(Tri& t) {
    const Vec& a = pts_[t.v[0]];
    const Vec& b = pts_[t.v[1]];
    const Vec& c = pts_[t.v[2]];
    Vec n = cross(b - a, c - a);
    const double len = norm(n);
    t.n = len > 0 ? n / len : Vec{0, 0, 0};
    t.d = (dot(t.n, a) + dot(t.n, b) + dot(t.n, c)) / 3.0;
}

int Hull3::make_tri(int a, int b, int c) {
    Tri t;
    t.v[0] = a;
    t.v[1] = b;
    t.v[2] = c;
    t.nb[0] = t.nb[1] = t.nb[2] = -1;
    set_plane(t);
    tris_.push_back(std::move(t));
    return static_cast<int>(tris_.size()) - 1;
}

int Hull3::build() {
    const int count = static_cast<int>(pts_.size());
    // Seed: most distant pair among axis extremes, then farthest from the
    // line, then farthest from the plane.
    std::array<int, 6> ext{};
    for (int k = 0; k < 3; ++k) {
        int lo = 0, hi = 0;
        for (int i = 1; i < count; ++i) {
            if (pts_[i][k] < pts_[lo][k]) lo = i;
            if (pts_[i][k] > pts_[hi][k]) hi = i;
        }
        ext[2 * k] = lo;
        ext[2 * k + 1] = hi;
    }
    int i0 = ext[0], i1 = ext[1];
    double best = -1;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            const double d = norm(pts_[ext[a]] - pts_[ext[b]]);
            if (d > best) {
                best = d;
                i0 = ext[a];
                i1 = ext[b];
            }
        }
    seed_[0] = i0;
    if (best <= eps_) return 0;
    seed_[1] = i1;
    const Vec axis = normalized(pts_[i1] - pts_[i0]);
    int i2 = -1;
    best = -1;
    for (int i = 0; i < count; ++i) {
        const Vec r = pts_[i] - pts_[i0];
        const double d = norm(r - dot(r, axis) * axis);
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best <= eps_) return 1;
    seed_[2] = i2;
    const Vec pn = normalized(cross(pts_[i1] - pts_[i0], pts_[i2] - pts_[i0]));
    int i3 = -1;
    best = -1;
    for (int i = 0; i < count; ++i) {
        const double d = std::abs(dot(pn, pts_[i] - pts_[i0]));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best <= eps_) return 2;
    seed_[3] = i3;

    if (dot(pn, pts_[i3] - pts_[i0]) > 0) std::swap(i1, i2);
    // Faces oriented outward: apex i3 lies below each.
    const int f0 = make_tri(i0, i1, i2);
    const int f1 = make_tri(i0, i3, i1);
    const int f2 = make_tri(i1, i3, i2);
    const int f3 = make_tri(i2, i3, i0);
    auto link = [&](int f, int k, int g) { tris_[f].nb[k] = g; };
    // f0 edges: (i0,i1)->f1, (i1,i2)->f2, (i2,i0)->f3
    link(f0, 0, f1);
    link(f0, 1, f2);
    link(f0, 2, f3);
    // f1 edges: (i0,i3)->f3, (i3,i1)->f2, (i1,i0)->f0
    link(f1, 0, f3);
    link(f1, 1, f2);
    link(f1, 2, f0);
    // f2 edges: (i1,i3)->f1, (i3,i2)->f3, (i2,i1)->f0
    link(f2, 0, f1);
    link(f2, 1, f3);
    link(f2, 2, f0);
    // f3 edges: (i2,i3)->f2, (i3,i0)->f1, (i0,i2)->f0
    link(f3, 0, f2);
    link(f3, 1, f1);
    link(f3, 2, f0);

    for (int i = 0; i < count; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        for (int f = 0; f < 4; ++f) {
            if (above(tris_[f], i)) {
                tris_[f].outside.push_back(i);
                break;
            }
        }
    }

    std::vector<int> work{f0, f1, f2, f3};
    std::vector<int> visible;
    std::vector<std::pair<int, int>> horizon;  // (face, edge index) on the visible side
    std::vector<int> orphans;
    int stamp = 0;
    while (!work.empty()) {
        const int f = work.back();
        work.pop_back();
        if (!tris_[f].alive || tris_[f].outside.empty()) continue;

        int apex = tris_[f].outside[0];
        double far = dist(tris_[f], apex);
        for (int p : tris_[f].outside) {
            const double d = dist(tris_[f], p);
            if (d > far) {
                far = d;
                apex = p;
            }
        }

        // Depth-first walk over visible faces. Each face is entered through
        // one edge and its remaining edges are visited in cyclic order, so
        // the horizon comes out as a counter-clockwise cycle.
        ++stamp;
        visible.clear();
        horizon.clear();
        struct Frame {
            int face;
            int first;
            int left;
        };
        std::vector<Frame> frames;
        tris_[f].mark = stamp;
        visible.push_back(f);
        frames.push_back({f, 0, 3});
        while (!frames.empty()) {
            Frame& fr = frames.back();
            if (fr.left == 0) {
                frames.pop_back();
                continue;
            }
            const int k = fr.first;
            fr.first = (fr.first + 1) % 3;
            --fr.left;
            const int face = fr.face;
            const int g = tris_[face].nb[k];
            if (tris_[g].mark == stamp) continue;
            if (above(tris_[g], apex)) {
                tris_[g].mark = stamp;
                visible.push_back(g);
                int back = 0;
                while (tris_[g].nb[back] != face) ++back;
                frames.push_back({g, (back + 1) % 3, 2});
            } else {
                horizon.emplace_back(face, k);
            }
        }

        const int nh = static_cast<int>(horizon.size());
        std::vector<int> fresh(nh);
        for (int e = 0; e < nh; ++e) {
            const auto [vf, k] = horizon[e];
            const int a = tris_[vf].v[k];
            const int b = tris_[vf].v[(k + 1) % 3];
            const int outer = tris_[vf].nb[k];
            const int t = make_tri(a, b, apex);
            fresh[e] = t;
            tris_[t].nb[0] = outer;
            for (int q = 0; q < 3; ++q) {
                if (tris_[outer].nb[q] == vf) {
                    tris_[outer].nb[q] = t;
                    break;
                }
            }
        }
        for (int e = 0; e < nh; ++e) {
            const int t = fresh[e];
            const int next = fresh[(e + 1) % nh];
            const int prev = fresh[(e + nh - 1) % nh];
            if (tris_[t].v[1] != tris_[next].v[0] || tris_[prev].v[1] != tris_[t].v[0]) {
                throw GeometryError(ErrorKind::DegenerateHull, "non-manifold horizon in 3D hull");
            }
            tris_[t].nb[1] = next;
            tris_[t].nb[2] = prev;
        }

        orphans.clear();
        for (int vf : visible) {
            tris_[vf].alive = false;
            for (int p : tris_[vf].outside)
                if (p != apex) orphans.push_back(p);
            std::vector<int>().swap(tris_[vf].outside);
        }
        for (int p : orphans) {
            for (int t : fresh) {
                if (above(tris_[t], p)) {
                    tris_[t].outside.push_back(p);
                    break;
                }
            }
        }
        for (int t : fresh)
            if (!tris_[t].outside.empty()) work.push_back(t);
    }
    return 3;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Polytope convex_hull(std::span<const Vec> points, int dim, HullOptions options) {
    if (dim != 2 && dim != 3) throw GeometryError(ErrorKind::DimensionMismatch, "dimension must be 2 or 3");
    if (points.empty()) throw GeometryError(ErrorKind::DegenerateHull, "empty point set");
    for (const Vec& p : points)
        for (int k = 0; k < 3; ++k)
            if (!std::isfinite(p[k])) throw GeometryError(ErrorKind::InvalidArgument, "non-finite coordinate");

    Polytope out;
    out.dim_ = dim;
    const double scale = bbox_diagonal(points, dim);
    const double eps = kMergeRelTol * scale;
    out.extent_ = scale;

    auto fail_degenerate = [&](int rank) {
        if (!options.allow_degenerate) {
            throw GeometryError(ErrorKind::DegenerateHull,
                                "hull has affine dimension " + std::to_string(rank) + " < " + std::to_string(dim));
        }
    };

    if (dim == 2) {
        std::vector<Vec> pts(points.begin(), points.end());
        for (Vec& p : pts) p[2] = 0.0;
        std::vector<Vec> ring = ring2d(std::move(pts), eps);
        if (ring.size() < 3) {
            const int rank = static_cast<int>(ring.size()) - 1;
            fail_degenerate(rank);
            out.affine_dim_ = rank;
            out.vertices_ = ring;
            Vec c{};
            for (const Vec& v : ring) c += v;
            out.centroid_ = c / static_cast<double>(ring.size());
            return out;
        }
        out.affine_dim_ = 2;
        const std::size_t m = ring.size();
        double area2 = 0.0;
        Vec c{};
        for (std::size_t i = 0; i < m; ++i) {
            const Vec& a = ring[i];
            const Vec& b = ring[(i + 1) % m];
            const double w = a[0] * b[1] - a[1] * b[0];
            area2 += w;
            c[0] += (a[0] + b[0]) * w;
            c[1] += (a[1] + b[1]) * w;
            const Vec e = b - a;
            const double len = std::hypot(e[0], e[1]);
            Facet f;
            f.normal = {e[1] / len, -e[0] / len, 0.0};
            f.offset = 0.5 * (dot(f.normal, a) + dot(f.normal, b));
            f.measure = len;
            out.facets_.push_back(f);
        }
        out.vertex_facets_.resize(m);
        for (std::size_t i = 0; i < m; ++i) out.vertex_facets_[i] = {static_cast<int>((i + m - 1) % m), static_cast<int>(i)};
        out.volume_ = 0.5 * area2;
        out.centroid_ = {c[0] / (3.0 * area2), c[1] / (3.0 * area2), 0.0};
        out.vertices_ = std::move(ring);
        return out;
    }

    Hull3 hull(points, eps);
    const int rank = hull.build();
    if (rank < 3) {
        fail_degenerate(rank);
        out.affine_dim_ = rank;
        const auto seed = hull.seed();
        if (rank == 0) {
            out.vertices_ = {points[seed[0]]};
            out.centroid_ = points[seed[0]];
            return out;
        }
        if (rank == 1) {
            const Vec o = points[seed[0]];
            const Vec axis = normalized(points[seed[1]] - o);
            int lo = 0, hi = 0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                const double t = dot(points[i] - o, axis);
                if (t < dot(points[lo] - o, axis)) lo = static_cast<int>(i);
                if (t > dot(points[hi] - o, axis)) hi = static_cast<int>(i);
            }
            out.vertices_ = {points[lo], points[hi]};
            std::sort(out.vertices_.begin(), out.vertices_.end(), lex_less);
            out.centroid_ = 0.5 * (points[lo] + points[hi]);
            return out;
        }
        // Planar set: hull inside the plane, lift the ring back.
        const Vec o = points[seed[0]];
        const Vec e1 = normalized(points[seed[1]] - o);
        Vec n = cross(points[seed[1]] - o, points[seed[2]] - o);
        n = normalized(n);
        const Vec e2 = cross(n, e1);
        std::vector<Vec> flat;
        flat.reserve(points.size());
        for (const Vec& p : points) {
            const Vec r = p - o;
            flat.push_back({dot(r, e1), dot(r, e2), 0.0});
        }
        std::vector<Vec> ring = ring2d(flat, eps);
        double area2 = 0.0, perim = 0.0;
        Vec c{};
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Vec& a = ring[i];
            const Vec& b = ring[(i + 1) % ring.size()];
            area2 += a[0] * b[1] - a[1] * b[0];
            perim += std::hypot(b[0] - a[0], b[1] - a[1]);
        }
        for (const Vec& q : ring) {
            const Vec v = o + q[0] * e1 + q[1] * e2;
            out.vertices_.push_back(v);
            c += v;
        }
        out.centroid_ = c / static_cast<double>(ring.size());
        std::sort(out.vertices_.begin(), out.vertices_.end(), lex_less);
        out.flat_area_ = 0.5 * std::abs(area2);
        out.flat_perimeter_ = perim;
        return out;
    }

    out.affine_dim_ = 3;
    const auto& tris = hull.tris();
    std::vector<int> live;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t)
        if (tris[t].alive) live.push_back(t);

    // Merge adjacent triangles lying in a common plane.
    const double coplanar = kCoplanarRelTol * scale;
    // Near-degenerate triangles (height below the tolerance) carry no usable
    // normal. They join exactly one neighbouring group afterwards so they
    // cannot bridge two distinct facets.
    std::vector<char> sliver(tris.size(), 0);
    for (int t : live) {
        const Vec& a = points[tris[t].v[0]];
        const Vec& b = points[tris[t].v[1]];
        const Vec& c = points[tris[t].v[2]];
        const double longest = std::max({norm(b - a), norm(c - b), norm(a - c)});
        sliver[t] = norm(cross(b - a, c - a)) <= coplanar * longest;
    }
    auto opposite = [&](int t, int k) {
        const Tri& a = tris[t];
        const Tri& b = tris[a.nb[k]];
        return b.v[0] + b.v[1] + b.v[2] - a.v[k] - a.v[(k + 1) % 3];
    };
    DisjointSet groups(static_cast<int>(tris.size()));
    for (int t : live) {
        if (sliver[t]) continue;
        for (int k = 0; k < 3; ++k) {
            const int g = tris[t].nb[k];
            if (g < t || sliver[g]) continue;
            const Tri& a = tris[t];
            const Tri& b = tris[g];
            if (dot(a.n, b.n) <= 0) continue;
            const int opp_b = opposite(t, k);
            const int opp_a = a.v[(k + 2) % 3];
            if (std::abs(dot(a.n, points[opp_b]) - a.d) <= coplanar &&
                std::abs(dot(b.n, points[opp_a]) - b.d) <= coplanar) {
                groups.unite(t, g);
            }
        }
    }
    std::vector<char> placed(tris.size(), 1);
    for (int t : live) placed[t] = !sliver[t];
    for (bool changed = true; changed;) {
        changed = false;
        for (int t : live) {
            if (placed[t]) continue;
            int best = -1;
            double best_d = std::numeric_limits<double>::infinity();
            for (int k = 0; k < 3; ++k) {
                const int g = tris[t].nb[k];
                if (!placed[g]) continue;
                // The own vertex off the shared edge, against the neighbour's plane.
                const double d = std::abs(dot(tris[g].n, points[tris[t].v[(k + 2) % 3]]) - tris[g].d);
                if (d < best_d) {
                    best_d = d;
                    best = g;
                }
            }
            if (best >= 0) {
                groups.unite(t, best);
                placed[t] = 1;
                changed = true;
            }
        }
    }

    const Vec origin = points[hull.seed()[0]];
    std::vector<int> group_index(tris.size(), -1);
    std::vector<Vec> group_normal;
    std::vector<double> group_area;
    std::vector<double> group_offset_sum;
    std::vector<int> group_offset_count;
    double vol6 = 0.0;
    Vec cacc{};
    for (int t : live) {
        const int root = groups.find(t);
        if (group_index[root] < 0) {
            group_index[root] = static_cast<int>(group_normal.size());
            group_normal.push_back({0, 0, 0});
            group_area.push_back(0.0);
            group_offset_sum.push_back(0.0);
            group_offset_count.push_back(0);
        }
        const int gi = group_index[root];
        const Vec& a = points[tris[t].v[0]];
        const Vec& b = points[tris[t].v[1]];
        const Vec& c = points[tris[t].v[2]];
        const Vec w = cross(b - a, c - a);
        group_normal[gi] += w;
        group_area[gi] += 0.5 * norm(w);
        const double tet = dot(a - origin, cross(b - origin, c - origin));
        vol6 += tet;
        cacc += tet * (a + b + c + origin);
    }
    out.volume_ = vol6 / 6.0;
    out.centroid_ = cacc / (4.0 * vol6);

    for (Vec& n : group_normal) n = normalized(n);
    std::vector<std::vector<int>> vertex_groups(points.size());
    for (int t : live) {
        const int gi = group_index[groups.find(t)];
        for (int k = 0; k < 3; ++k) {
            const int v = tris[t].v[k];
            group_offset_sum[gi] += dot(group_normal[gi], points[v]);
            group_offset_count[gi] += 1;
            auto& vg = vertex_groups[v];
            if (std::find(vg.begin(), vg.end(), gi) == vg.end()) vg.push_back(gi);
        }
    }
    for (std::size_t gi = 0; gi < group_normal.size(); ++gi) {
        Facet f;
        f.normal = group_normal[gi];
        f.offset = group_offset_sum[gi] / group_offset_count[gi];
        f.measure = group_area[gi];
        out.facets_.push_back(f);
    }
    // One edge per pair of adjacent groups, spanning the vertices the two
    // groups share. Slivers along a crease would otherwise split or double it.
    std::vector<std::vector<int>> group_vertices(group_normal.size());
    std::vector<std::pair<int, int>> pairs;
    for (int t : live) {
        const int ga = group_index[groups.find(t)];
        for (int k = 0; k < 3; ++k) {
            group_vertices[ga].push_back(tris[t].v[k]);
            const int gb = group_index[groups.find(tris[t].nb[k])];
            if (ga < gb) pairs.emplace_back(ga, gb);
        }
    }
    for (auto& gv : group_vertices) {
        std::sort(gv.begin(), gv.end());
        gv.erase(std::unique(gv.begin(), gv.end()), gv.end());
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<int> shared;
    for (const auto& [ga, gb] : pairs) {
        shared.clear();
        std::set_intersection(group_vertices[ga].begin(), group_vertices[ga].end(), group_vertices[gb].begin(),
                              group_vertices[gb].end(), std::back_inserter(shared));
        if (shared.size() < 2) continue;
        Vec dir = cross(group_normal[ga], group_normal[gb]);
        if (norm(dir) == 0.0) continue;
        dir = normalized(dir);
        int lo = shared[0], hi = shared[0];
        for (int v : shared) {
            if (dot(dir, points[v]) < dot(dir, points[lo])) lo = v;
            if (dot(dir, points[v]) > dot(dir, points[hi])) hi = v;
        }
        Edge e;
        e.a = points[lo];
        e.b = points[hi];
        e.length = norm(e.b - e.a);
        if (e.length <= eps) continue;
        const double c = std::clamp(dot(group_normal[ga], group_normal[gb]), -1.0, 1.0);
        e.exterior_angle = std::acos(c);
        out.edges_.push_back(e);
    }
    // Extreme points are those incident to at least three distinct facets.
    std::vector<int> extreme;
    for (std::size_t v = 0; v < points.size(); ++v) {
        if (vertex_groups[v].size() >= 3) extreme.push_back(static_cast<int>(v));
    }
    std::sort(extreme.begin(), extreme.end(), [&](int x, int y) { return lex_less(points[x], points[y]); });
    // Drop near-duplicates (they differ by at most eps in x, so scan back)
    // and pool their facets.
    for (int v : extreme) {
        const Vec& p = points[v];
        int dup = -1;
        for (int k = static_cast<int>(out.vertices_.size()) - 1; k >= 0 && p[0] - out.vertices_[k][0] <= eps; --k) {
            if (norm(p - out.vertices_[k]) <= eps) {
                dup = k;
                break;
            }
        }
        if (dup < 0) {
            out.vertices_.push_back(p);
            out.vertex_facets_.push_back(vertex_groups[v]);
        } else {
            auto& vf = out.vertex_facets_[dup];
            for (int g : vertex_groups[v])
                if (std::find(vf.begin(), vf.end(), g) == vf.end()) vf.push_back(g);
        }
    }
    for (auto& vf : out.vertex_facets_) std::sort(vf.begin(), vf.end());
    return out;
}

}  // namespace quermass
