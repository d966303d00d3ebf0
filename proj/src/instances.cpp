#include <algorithm>
#include <cmath>
#include <random>

#include "quermass/verify.hpp"

namespace quermass {

namespace {

std::mt19937_64 make_rng(std::initializer_list<std::uint64_t> parts) {
    std::vector<std::uint32_t> words;
    for (std::uint64_t v : parts) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

Vec gaussian(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> N;
    Vec v{};
    for (int k = 0; k < dim; ++k) v[k] = N(rng);
    return v;
}

bool fits(const Polytope& L, const Polytope& D, double ratio, const Vec& center) {
    const Vec cD = D.centroid();
    for (const Vec& v : D.vertices()) {
        const Vec w = ratio * (v - cD) + center;
        for (const Facet& f : L.facets())
            if (dot(f.normal, w) > f.offset) return false;
    }
    return true;
}

}  // namespace

const char* to_string(BodyKind kind) {
    switch (kind) {
        case BodyKind::HullOfGaussians: return "hull_of_gaussians";
        case BodyKind::RandomZonotope: return "random_zonotope";
        case BodyKind::RandomSimplexLike: return "random_simplex_like";
    }
    return "unknown";
}

Polytope random_body(std::uint64_t seed, int dim, BodyKind kind) {
    if (dim != 2 && dim != 3) throw GeometryError(ErrorKind::DimensionMismatch, "only dimensions 2 and 3 are supported");
    auto rng = make_rng({seed, static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(kind)});
    Polytope body;
    for (int attempt = 0;; ++attempt) {
        std::vector<Vec> pts;
        if (kind == BodyKind::RandomZonotope) {
            pts.push_back({0, 0, 0});
            for (int g = 0; g < 6; ++g) {
                const Vec s = gaussian(rng, dim);
                std::vector<Vec> next;
                for (const Vec& p : pts) {
                    next.push_back(p - 0.5 * s);
                    next.push_back(p + 0.5 * s);
                }
                const Polytope h = convex_hull(next, dim, {.allow_degenerate = true});
                pts = h.vertices();
            }
        } else {
            const int m = kind == BodyKind::HullOfGaussians ? (dim == 2 ? 20 : 40) : dim + 2;
            for (int k = 0; k < m; ++k) pts.push_back(gaussian(rng, dim));
        }
        try {
            body = convex_hull(pts, dim);
            if (body.volume() > 1e-3) break;
        } catch (const GeometryError&) {
        }
        if (attempt > 100) throw GeometryError(ErrorKind::ConstructionFailed, "could not draw a full-dimensional body");
    }
    std::uniform_real_distribution<double> U(1.0, 4.0);
    const double target = U(rng);
    const double scale = target / body.diameter();
    return scale_translate(body, scale, -scale * body.centroid());
}

double max_homothety_ratio(const Polytope& L, const Polytope& D) {
    if (L.degenerate()) throw GeometryError(ErrorKind::DegenerateHull, "container must have interior");
    const Vec c = L.centroid();
    if (D.size() == 1) return std::numeric_limits<double>::infinity();
    double lo = 0.0, hi = 1.0;
    while (fits(L, D, hi, c)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) return hi;
    }
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        (fits(L, D, mid, c) ? lo : hi) = mid;
    }
    return lo;
}

BodyPair nested_pair(const Polytope& K, const std::optional<Polytope>& L, double shrink, double ratio, std::uint64_t seed,
                     const NestOptions& options) {
    if (!(shrink > 0.0 && shrink <= 1.0)) throw GeometryError(ErrorKind::InvalidArgument, "shrink must lie in (0, 1]");
    if (!(ratio > 0.0)) throw GeometryError(ErrorKind::InvalidArgument, "ratio must be positive");
    const int n = K.dim();
    auto rng = make_rng({seed, 0x6e657374ULL});
    BodyPair out;
    out.seed = seed;
    out.K = K;
    out.L = L;
    const Vec cK = K.centroid();
    out.D = shrink == 1.0 ? K : scale_translate(K, shrink, (1.0 - shrink) * cK);
    out.homothety_ratio = ratio;
    const Vec cD = out.D.centroid();
    const Vec jitter = options.translation_scale * out.D.diameter() * gaussian(rng, n);
    auto place = [&](const Vec& t) { return scale_translate(out.D, ratio, (1.0 - ratio) * cD + t); };
    if (!L) {
        out.translation = jitter;
        out.Dprime = place(jitter);
        return out;
    }
    if (L->dim() != n) throw GeometryError(ErrorKind::DimensionMismatch, "K and L differ in dimension");
    const Vec base = L->centroid() - cD;
    Vec delta = jitter;
    for (int attempt = 0; attempt < 40; ++attempt, delta = 0.5 * delta) {
        if (attempt == 39) delta = {};
        Polytope cand = place(base + delta);
        if (contains(*L, cand, 0.0)) {
            out.translation = base + delta;
            out.Dprime = std::move(cand);
            return out;
        }
    }
    throw GeometryError(ErrorKind::CannotNest, "no translate of ratio * D fits inside L");
}

BodyPair make_trial_instance(std::uint64_t seed, int dim, int trial) {
    auto rng = make_rng({seed, static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(trial), 0x7472ULL});
    const auto kK = static_cast<BodyKind>(trial % 3);
    const auto kL = static_cast<BodyKind>((trial / 3) % 3);
    const Polytope K = random_body(rng(), dim, kK);
    const Polytope L = random_body(rng(), dim, kL);
    std::uniform_real_distribution<double> U(0.2, 0.9);
    const double shrink = U(rng);
    const std::uint64_t nest_seed = rng();
    const Polytope D = scale_translate(K, shrink, (1.0 - shrink) * K.centroid());
    const double ratio = U(rng) * std::min(max_homothety_ratio(L, D), 1e6);
    BodyPair pair = nested_pair(K, L, shrink, ratio, nest_seed);
    return pair;
}

}  // namespace quermass
