#include <algorithm>
#include <cmath>
#include <random>

#include "quermass/functionals.hpp"
#include "quermass/verify.hpp"

namespace quermass {

namespace {

constexpr double kProportionalTol = 1e-8;
constexpr double kJitter = 1e-2;

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Parameter points at which the equality clause applies.
std::vector<InequalityParams> equality_points(const std::string& id, int n) {
    static const double ps[] = {1.0, 1.5, 2.0, 3.0};
    std::vector<InequalityParams> out;
    for (const SweepEntry& e : default_sweep(n, ps)) {
        if (e.id != id) continue;
        for (const InequalityParams& q : e.points) {
            if (!is_asserted(id, n, q)) continue;
            if ((id == "thmA.eq3" || id == "cor1.eq22" || id == "thm3.eq23" || id == "thm4.eq28") && q.i >= n - 1) continue;
            if ((id == "thm1.eq19" || id == "thm2.eq20") && !(q.i < n - q.p)) continue;
            out.push_back(q);
        }
    }
    return out;
}

// Bisection for r with W_i(r D) / W_i(D) = target.
double solve_ratio(const Polytope& D, int i, double target) {
    const double wd = quermassintegral(D, i);
    auto f = [&](double r) { return quermassintegral(scale_translate(D, r, {}), i) - target * wd; };
    double lo = 1e-3, hi = 1e3;
    if (f(lo) > 0.0 || f(hi) < 0.0) throw GeometryError(ErrorKind::ConstructionFailed, "no homothety ratio brackets the target");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool proportional(const BodyPair& b, int i) {
    const double lhs = quermassintegral(b.K, i) * quermassintegral(b.Dprime, i);
    const double rhs = quermassintegral(*b.L, i) * quermassintegral(b.D, i);
    return rel_diff(lhs, rhs) <= kProportionalTol;
}

struct Family {
    Polytope K;
    Polytope L;
    Polytope D;
};

Family make_family(int dim, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0xe9a1u,
                      static_cast<std::uint32_t>(dim)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss;
    Family f;
    f.K = random_body(seed, dim, static_cast<BodyKind>(seed % 3));
    const double c = 0.5 + 1.5 * unit(rng);
    Vec t{};
    for (int k = 0; k < dim; ++k) t[k] = gauss(rng);
    f.L = scale_translate(f.K, c, t);
    const double s = 0.3 + 0.5 * unit(rng);
    f.D = scale_translate(f.K, s, (1.0 - s) * f.K.centroid());
    return f;
}

// D' = ratio (D - c_D) + c_L with the ratio making the W_i pairs proportional.
BodyPair witness(const Family& f, int i, std::uint64_t seed) {
    const double target = quermassintegral(f.L, i) / quermassintegral(f.K, i);
    const double ratio = solve_ratio(f.D, i, target);
    BodyPair b;
    b.K = f.K;
    b.L = f.L;
    b.D = f.D;
    b.translation = f.L.centroid() - f.D.centroid();
    b.Dprime = scale_translate(f.D, ratio, (1.0 - ratio) * f.D.centroid() + b.translation);
    b.homothety_ratio = ratio;
    b.seed = seed;
    return b;
}

Polytope jitter(const Polytope& body, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x7177u};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    const double amp = kJitter * body.diameter();
    std::vector<Vec> pts;
    for (const Vec& v : body.vertices()) {
        Vec w = v;
        for (int k = 0; k < body.dim(); ++k) w[k] += amp * gauss(rng);
        pts.push_back(w);
    }
    return convex_hull(pts, body.dim());
}

}  // namespace

const std::vector<std::string>& equality_ids() {
    static const std::vector<std::string> ids = {
        "bm.eq1",    "bm.eq2",    "thmA.eq3",  "thmC.eq6",  "lem1.eq13", "lem1.eq14", "lem2.eq15", "lem2.eq16",
        "thm1.eq19", "thm2.eq20", "cor1.eq22", "thm3.eq23", "cor2.eq27", "thm4.eq28", "cor3.eq29"};
    return ids;
}

EqualityProbeResult equality_probe(const std::string& id, int dim, std::uint64_t family_seed, const CheckConfig& config) {
    if (std::find(equality_ids().begin(), equality_ids().end(), id) == equality_ids().end()) {
        throw GeometryError(ErrorKind::InvalidArgument, "no equality clause for " + id);
    }
    EqualityProbeResult out;
    const std::vector<InequalityParams> points = equality_points(id, dim);
    if (points.empty()) return out;

    const Family fam = make_family(dim, family_seed);
    // One ratio serves every i for homothetic K, L; fall back to per-i
    // instances if it does not.
    std::map<int, BodyPair> by_i;
    const BodyPair shared = witness(fam, 0, family_seed);
    auto instance_for = [&](int i) -> const BodyPair& {
        auto it = by_i.find(i);
        if (it != by_i.end()) return it->second;
        return by_i.emplace(i, proportional(shared, i) ? shared : witness(fam, i, family_seed)).first->second;
    };

    std::map<int, InstanceEvaluator> evaluators;
    for (const InequalityParams& q : points) {
        auto it = evaluators.find(q.i);
        if (it == evaluators.end()) it = evaluators.emplace(q.i, InstanceEvaluator(instance_for(q.i), config)).first;
        out.witnesses.push_back(it->second.check(id, q));
    }

    BodyPair perturbed = shared;
    perturbed.L = jitter(*shared.L, family_seed);
    InstanceEvaluator pev(perturbed, config);
    for (const InequalityParams& q : points) out.perturbed.push_back(pev.check(id, q));
    return out;
}

std::vector<ReductionResult> reduction_chains(int dim, int trials, std::uint64_t seed, const CheckConfig& config) {
    std::vector<ReductionResult> out = {{"thm1.eq19(p=1) = thmA.eq3", 0.0, 1e-9}, {"cor1.eq22(i=0) = thmC.eq6", 0.0, 1e-6}};
    if (dim == 3) out.push_back({"cor3.eq29 = thm4.eq28(i=0,j=1)", 0.0, 1e-9});
    auto track = [](ReductionResult& r, const InequalityReport& a, const InequalityReport& b) {
        r.max_rel_diff = std::max({r.max_rel_diff, rel_diff(a.lhs, b.lhs), rel_diff(a.rhs, b.rhs)});
    };
    for (int t = 0; t < trials; ++t) {
        InstanceEvaluator ev(make_trial_instance(seed, dim, t), config);
        for (int i = 0; i < dim; ++i) track(out[0], ev.check("thm1.eq19", {i, 0, 1.0}), ev.check("thmA.eq3", {i, 0, 1.0}));
        track(out[1], ev.check("cor1.eq22", {0, 0, 1.0}), ev.check("thmC.eq6", {0, 0, 1.0}));
        if (dim == 3) track(out[2], ev.check("cor3.eq29", {0, 1, 1.0}), ev.check("thm4.eq28", {0, 1, 1.0}));
    }
    return out;
}

}  // namespace quermass
