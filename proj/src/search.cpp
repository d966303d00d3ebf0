#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include <json.hpp>

#include "quermass/body_io.hpp"
#include "quermass/functionals.hpp"
#include "quermass/projection.hpp"
#include "quermass/verify.hpp"

namespace quermass {

namespace {

using ordered_json = nlohmann::ordered_json;

std::mt19937_64 make_rng(std::initializer_list<std::uint64_t> parts) {
    std::vector<std::uint32_t> words;
    for (std::uint64_t v : parts) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

enum class Problem { MixedVolume, Projection };

struct ProblemInfo {
    Problem kind;
    bool points;  // inner bodies are single points
};

ProblemInfo problem_info(const std::string& id) {
    if (id == "problem1") return {Problem::MixedVolume, false};
    if (id == "problem2") return {Problem::Projection, false};
    if (id == "af_special") return {Problem::MixedVolume, true};
    if (id == "af_special_pi") return {Problem::Projection, true};
    throw GeometryError(ErrorKind::InvalidArgument, "unknown search problem " + id);
}

int slot_count(Problem kind, int dim) { return kind == Problem::MixedVolume ? dim : dim - 1; }

void check_r(Problem kind, int dim, int r) {
    const int m = slot_count(kind, dim);
    if (r < 0 || r > m) {
        throw GeometryError(ErrorKind::InvalidArgument,
                            "r must lie in [0, " + std::to_string(m) + "] for this problem in dimension " +
                                std::to_string(dim));
    }
}

struct Tuple {
    int dim = 3;
    std::vector<Polytope> outer;
    std::vector<Polytope> inner;
};

// Mixed volume or mixed projection body volume of the bodies picked by
// `slots`, memoised on the sorted slot list (both are symmetric).
class TupleEvaluator {
public:
    TupleEvaluator(const Tuple& t, Problem kind, int grid_level) : t_(t), kind_(kind), level_(grid_level) {}

    double dv(const std::vector<int>& slots) { return value(slots, false) - value(slots, true); }

private:
    double value(std::vector<int> slots, bool inner) {
        std::sort(slots.begin(), slots.end());
        auto& cache = inner ? inner_cache_ : outer_cache_;
        auto it = cache.find(slots);
        if (it != cache.end()) return it->second;
        const std::vector<Polytope>& src = inner ? t_.inner : t_.outer;
        std::vector<const Polytope*> bodies;
        bool has_point = false;
        for (int s : slots) {
            bodies.push_back(&src[s]);
            has_point = has_point || src[s].size() == 1;
        }
        double v = 0.0;
        if (!has_point) {
            if (kind_ == Problem::MixedVolume) {
                v = mixed_volume(std::span<const Polytope* const>(bodies));
            } else {
                ProjectionSpec spec{t_.dim, bodies, projection_grid(t_.dim, level_, bodies)};
                v = projection_body(spec).volume();
            }
        }
        return cache.emplace(std::move(slots), v).first->second;
    }

    const Tuple& t_;
    Problem kind_;
    int level_;
    std::map<std::vector<int>, double> outer_cache_;
    std::map<std::vector<int>, double> inner_cache_;
};

SearchEvaluation evaluate_tuple(const Tuple& t, Problem kind, int r, int grid_level) {
    SearchEvaluation e;
    const int m = slot_count(kind, t.dim);
    TupleEvaluator ev(t, kind, grid_level);
    std::vector<int> all(m);
    for (int k = 0; k < m; ++k) all[k] = k;
    e.lhs = std::pow(ev.dv(all), r);
    e.rhs = 1.0;
    for (int j = 0; j < r; ++j) {
        std::vector<int> slots(r, j);
        for (int k = r; k < m; ++k) slots.push_back(k);
        e.rhs *= ev.dv(slots);
    }
    e.rel_slack = (e.lhs - e.rhs) / std::max({std::abs(e.lhs), std::abs(e.rhs), 1e-300});
    if (std::abs(e.rel_slack) < 1e-12) e.rel_slack = 0.0;
    return e;
}

Polytope inner_body(const Polytope& K, NestMode mode, bool point, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.2, 0.9);
    const Vec c = K.centroid();
    if (point) return point_body(c, K.dim());
    if (mode == NestMode::Homothetic) {
        const double s = U(rng);
        return scale_translate(K, s, (1.0 - s) * c);
    }
    const auto kind = static_cast<BodyKind>(rng() % 3);
    const Polytope raw = random_body(rng(), K.dim(), kind);
    const double ratio = U(rng) * max_homothety_ratio(K, raw);
    return scale_translate(raw, ratio, c - ratio * raw.centroid());
}

Tuple draw_tuple(Problem kind, bool points, int dim, long trial, std::uint64_t seed, NestMode mode) {
    auto rng = make_rng({seed, static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(trial), 0x736561726368ULL});
    Tuple t;
    t.dim = dim;
    const int m = slot_count(kind, dim);
    for (int k = 0; k < m; ++k) t.outer.push_back(random_body(rng(), dim, static_cast<BodyKind>((trial + k) % 3)));
    for (int k = 0; k < m; ++k) t.inner.push_back(inner_body(t.outer[k], mode, points, rng));
    return t;
}

ordered_json body_json(const Polytope& p) { return ordered_json::parse(body_to_json_text(p)); }

std::string tuple_json(const std::string& problem_id, int r, const Tuple& t) {
    ordered_json j;
    j["problem"] = problem_id;
    j["r"] = r;
    j["dim"] = t.dim;
    j["bodies"] = ordered_json::array();
    j["nested"] = ordered_json::array();
    for (const Polytope& p : t.outer) j["bodies"].push_back(body_json(p));
    for (const Polytope& p : t.inner) j["nested"].push_back(body_json(p));
    return j.dump(2);
}

}  // namespace

const char* to_string(NestMode mode) { return mode == NestMode::Homothetic ? "homothetic" : "random"; }

SearchReport conjecture_search(const std::string& problem_id, int dim, int r, long trials, std::uint64_t seed,
                               const SearchConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemInfo info = problem_info(problem_id);
    if (dim != 2 && dim != 3) throw GeometryError(ErrorKind::DimensionMismatch, "only dimensions 2 and 3 are supported");
    check_r(info.kind, dim, r);
    if (trials <= 0) throw GeometryError(ErrorKind::InvalidArgument, "trials must be positive");

    SearchReport rep;
    rep.problem_id = problem_id;
    rep.dim = dim;
    rep.r = r;
    rep.trials = trials;
    rep.seed = seed;
    rep.min_rel_slack = std::numeric_limits<double>::infinity();
    Tuple worst;
    for (long t = 0; t < trials; ++t) {
        Tuple tup = draw_tuple(info.kind, info.points, dim, t, seed, config.nest);
        const SearchEvaluation e = evaluate_tuple(tup, info.kind, r, config.grid_level);
        if (e.rel_slack < rep.min_rel_slack) {
            rep.min_rel_slack = e.rel_slack;
            rep.worst_trial = t;
            rep.worst_lhs = e.lhs;
            rep.worst_rhs = e.rhs;
            worst = std::move(tup);
        }
    }
    rep.worst_instance = tuple_json(problem_id, r, worst);
    rep.violation_candidate = rep.min_rel_slack < -config.tolerance;
    if (rep.violation_candidate) {
        const SearchEvaluation fine = evaluate_tuple(worst, info.kind, r, config.grid_level + 1);
        rep.persistent = fine.rel_slack < -config.tolerance;
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

SearchEvaluation evaluate_search_instance(const std::string& instance_json, int grid_level) {
    ordered_json j;
    try {
        j = ordered_json::parse(instance_json);
    } catch (const nlohmann::json::exception& e) {
        throw GeometryError(ErrorKind::ParseError, e.what());
    }
    try {
        const ProblemInfo info = problem_info(j.at("problem").get<std::string>());
        const int r = j.at("r").get<int>();
        Tuple t;
        for (const auto& b : j.at("bodies")) t.outer.push_back(body_from_json_text(b.dump()));
        for (const auto& b : j.at("nested")) t.inner.push_back(body_from_json_text(b.dump()));
        if (t.outer.empty()) throw GeometryError(ErrorKind::ParseError, "instance has no bodies");
        t.dim = t.outer.front().dim();
        const int m = slot_count(info.kind, t.dim);
        if (static_cast<int>(t.outer.size()) != m || static_cast<int>(t.inner.size()) != m) {
            throw GeometryError(ErrorKind::ParseError, "instance needs " + std::to_string(m) + " bodies and nested bodies");
        }
        for (const Polytope& p : t.outer)
            if (p.dim() != t.dim) throw GeometryError(ErrorKind::DimensionMismatch, "bodies differ in dimension");
        for (const Polytope& p : t.inner)
            if (p.dim() != t.dim) throw GeometryError(ErrorKind::DimensionMismatch, "bodies differ in dimension");
        check_r(info.kind, t.dim, r);
        return evaluate_tuple(t, info.kind, r, grid_level);
    } catch (const nlohmann::json::exception& e) {
        throw GeometryError(ErrorKind::ParseError, e.what());
    }
}

std::vector<SpecializationReport> remark_specializations(const BodyPair& instance, int grid_level) {
    if (!instance.L) throw GeometryError(ErrorKind::InvalidArgument, "specialisations need L");
    const int n = instance.K.dim();
    std::vector<SpecializationReport> out;
    auto push = [&](const std::string& name, double lhs, double rhs) {
        const double rel = (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        out.push_back({name, lhs, rhs, std::abs(rel) < 1e-12 ? 0.0 : rel});
    };

    // r = n with K_1 = ... = K_{n-1} = K, K_n = L and likewise D, D'.
    Tuple t1;
    t1.dim = n;
    for (int k = 0; k + 1 < n; ++k) {
        t1.outer.push_back(instance.K);
        t1.inner.push_back(instance.D);
    }
    t1.outer.push_back(*instance.L);
    t1.inner.push_back(instance.Dprime);
    const SearchEvaluation e1 = evaluate_tuple(t1, Problem::MixedVolume, n, grid_level);
    push("problem1(r=n; K..K,L; D..D,D')", e1.lhs, e1.rhs);

    CheckConfig cfg;
    cfg.grid_level = grid_level;
    InstanceEvaluator ev(instance, cfg);
    const InequalityReport c = ev.check("thmC.eq6", {0, 0, 1.0});
    push("thmC.eq6", c.lhs, c.rhs);
    if (n < 3) return out;

    // r = n - 1 projection form. Its left side raised to n - 1 and to n.
    Tuple t2;
    t2.dim = n;
    for (int k = 0; k + 2 < n; ++k) {
        t2.outer.push_back(instance.K);
        t2.inner.push_back(instance.D);
    }
    t2.outer.push_back(*instance.L);
    t2.inner.push_back(instance.Dprime);
    const SearchEvaluation e2 = evaluate_tuple(t2, Problem::Projection, n - 1, grid_level);
    push("problem2(r=n-1; K..K,L; D..D,D')", e2.lhs, e2.rhs);
    const double base = std::pow(e2.lhs, 1.0 / (n - 1));
    TupleEvaluator pe(t2, Problem::Projection, grid_level);
    std::vector<int> kk(n - 1, 0);
    const double dk = pe.dv(kk);
    push("problem2(r=n-1) with exponent n", std::pow(base, n), e2.rhs * dk);
    const InequalityReport c3 = ev.check("cor3.eq29", {0, 1, 1.0});
    push("cor3.eq29", c3.lhs, c3.rhs);
    const InequalityReport r3 = ev.check("rem3.eq34", {0, 1, 1.0});
    push("rem3.eq34", r3.lhs, r3.rhs);
    return out;
}

}  // namespace quermass
