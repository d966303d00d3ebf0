#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "quermass/functionals.hpp"
#include "quermass/projection.hpp"
#include "quermass/suite.hpp"

namespace quermass {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ball levels for the inclusion-exclusion vs difference quotient oracle.
// Coarser balls leave a bracket wider than the 1e-4 target.
constexpr int kOracleBallLevel2D = 8;
constexpr int kOracleBallLevel3D = 5;
constexpr long kMonteCarloSamples = 1'000'000;

const std::vector<std::string> kJIds = {"lem2.eq15", "lem2.eq16", "thm3.eq23", "thm4.eq28"};

bool contains_value(const std::vector<int>& v, int x) { return v.empty() || std::find(v.begin(), v.end(), x) != v.end(); }

std::vector<SweepEntry> filtered_sweep(const SuiteConfig& config, int dim) {
    std::vector<SweepEntry> out;
    for (SweepEntry e : default_sweep(dim, config.p_values)) {
        const bool uses_j = std::find(kJIds.begin(), kJIds.end(), e.id) != kJIds.end();
        std::vector<InequalityParams> kept;
        for (const InequalityParams& q : e.points) {
            if (!contains_value(config.i_values, q.i)) continue;
            if (uses_j && !contains_value(config.j_values, q.j)) continue;
            kept.push_back(q);
        }
        e.points = std::move(kept);
        if (!e.points.empty()) out.push_back(std::move(e));
    }
    return out;
}

CheckConfig check_config(const SuiteConfig& c, int refine = 0) {
    CheckConfig cc;
    cc.ball_level = c.ball_level + refine;
    cc.grid_level = c.grid_level + refine;
    cc.tolerance_overrides = c.tolerance_overrides;
    cc.inject_flip = c.inject_flip;
    return cc;
}

bool known_id(const std::string& id) {
    const auto& ids = inequality_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json config_echo(const SuiteConfig& c, const std::string& command) {
    ordered_json j;
    j["command"] = command;
    j["dims"] = c.dims;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["i_values"] = c.i_values;
    j["j_values"] = c.j_values;
    j["p_values"] = c.p_values;
    j["ball_level"] = c.ball_level;
    j["grid_level"] = c.grid_level;
    ordered_json tol = ordered_json::object();
    for (const auto& [id, v] : c.tolerance_overrides) tol[id] = v;
    j["tolerance_overrides"] = tol;
    if (!c.inject_flip.empty()) j["inject_flip"] = c.inject_flip;
    j["output_format"] = c.output_format;
    if (command == "search") {
        j["problems"] = c.problems;
        j["r_values"] = c.r_values;
        j["nest"] = to_string(c.nest);
        j["search_tolerance"] = c.search_tolerance;
    }
    if (command == "equality") j["families"] = c.families;
    return j;
}

ordered_json report_json(const InequalityReport& r) {
    ordered_json j;
    j["inequality_id"] = r.inequality_id;
    j["dim"] = r.dim;
    j["i"] = r.params.i;
    j["j"] = r.params.j;
    j["p"] = r.params.p;
    j["trial"] = r.trial;
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["slack"] = number(r.slack);
    j["rel_slack"] = number(r.rel_slack);
    j["tolerance"] = number(r.tolerance);
    j["uncertainty"] = number(r.uncertainty);
    j["verdict"] = to_string(r.verdict);
    j["asserted"] = r.asserted;
    return j;
}

ordered_json error_json(const SuiteError& e) {
    ordered_json j;
    j["inequality_id"] = e.inequality_id;
    j["dim"] = e.dim;
    j["i"] = e.params.i;
    j["j"] = e.params.j;
    j["p"] = e.params.p;
    j["trial"] = e.trial;
    j["message"] = e.message;
    return j;
}

std::string fmt(double x) {
    if (!std::isfinite(x)) return "";
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void update(IdSummary& s, const SuiteRecord& rec) {
    const InequalityReport& r = rec.report;
    if (s.count == 0) s.min_rel_slack = s.logged_min_rel_slack = kInf;
    ++s.count;
    if (r.asserted) {
        ++s.asserted;
        s.min_rel_slack = std::min(s.min_rel_slack, r.rel_slack);
        if (r.verdict == Verdict::Equality) ++s.equalities;
        if (r.verdict == Verdict::ViolationCandidate) ++s.violation_candidates;
        if (rec.persistent) ++s.persistent;
    } else {
        s.logged_min_rel_slack = std::min(s.logged_min_rel_slack, r.rel_slack);
    }
}

// Fraction of uniform samples of the bounding box that land in the body.
double monte_carlo_volume(const Polytope& body, long samples, std::mt19937_64& rng, double& standard_error) {
    const int n = body.dim();
    Vec lo{}, hi{};
    for (int k = 0; k < n; ++k) {
        lo[k] = kInf;
        hi[k] = -kInf;
    }
    for (const Vec& v : body.vertices())
        for (int k = 0; k < n; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    double box = 1.0;
    for (int k = 0; k < n; ++k) box *= hi[k] - lo[k];
    std::uniform_real_distribution<double> U(0.0, 1.0);
    long inside = 0;
    for (long s = 0; s < samples; ++s) {
        Vec x{};
        for (int k = 0; k < n; ++k) x[k] = lo[k] + (hi[k] - lo[k]) * U(rng);
        bool in = true;
        for (const Facet& f : body.facets()) {
            if (dot(f.normal, x) > f.offset) {
                in = false;
                break;
            }
        }
        inside += in;
    }
    const double frac = static_cast<double>(inside) / samples;
    standard_error = box * std::sqrt(frac * (1.0 - frac) / samples);
    return box * frac;
}

}  // namespace

void validate(const SuiteConfig& c) {
    auto fail = [](const std::string& m) { throw GeometryError(ErrorKind::InvalidArgument, m); };
    if (c.dims.empty()) fail("dims must not be empty");
    int max_dim = 0;
    for (int d : c.dims) {
        if (d != 2 && d != 3) fail("dims must be a subset of {2, 3}");
        max_dim = std::max(max_dim, d);
    }
    if (c.trials <= 0) fail("trials must be positive");
    for (int i : c.i_values)
        if (i < 0 || i > max_dim - 1) fail("i values must lie in [0, n-1]");
    for (int j : c.j_values)
        if (j < 0 || j > max_dim - 1) fail("j values must lie in [0, n-1]");
    if (c.p_values.empty()) fail("p values must not be empty");
    for (double p : c.p_values)
        if (!(p >= 1.0) || !std::isfinite(p)) fail("p values must be finite and at least 1");
    const int max_ball = max_dim == 3 ? kMaxBallLevel3D : kMaxBallLevel2D;
    // Refinement evaluates one level finer.
    if (c.ball_level < 0 || c.ball_level + 1 > max_ball) fail("ball level out of range");
    const int min_grid = max_dim == 3 ? 3 : 2;
    if (c.grid_level < min_grid || c.grid_level > 6) fail("grid level out of range");
    for (const auto& [id, v] : c.tolerance_overrides) {
        if (!known_id(id)) fail("unknown inequality id in tolerance override: " + id);
        if (!(v > 0.0)) fail("tolerance overrides must be positive");
    }
    for (const std::string& id : c.inject_flip)
        if (!known_id(id)) fail("unknown inequality id: " + id);
    if (c.output_format != "json" && c.output_format != "csv") fail("format must be json or csv");
    if (c.families <= 0) fail("families must be positive");
    for (const std::string& p : c.problems)
        if (p != "problem1" && p != "problem2" && p != "af_special" && p != "af_special_pi") fail("unknown problem " + p);
    for (int r : c.r_values)
        if (r < 0 || r > 3) fail("r values must lie in [0, 3]");
    if (!(c.search_tolerance > 0.0)) fail("search tolerance must be positive");
}

VerifyResult run_verify(const SuiteConfig& config) {
    validate(config);
    VerifyResult out;
    for (int dim : config.dims) {
        const std::vector<SweepEntry> sweep = filtered_sweep(config, dim);
        for (long t = 0; t < config.trials; ++t) {
            BodyPair pair;
            try {
                pair = make_trial_instance(config.seed, dim, static_cast<int>(t));
            } catch (const GeometryError& e) {
                out.errors.push_back({"instance", dim, {}, t, e.what()});
                continue;
            }
            InstanceEvaluator ev(pair, check_config(config));
            std::optional<InstanceEvaluator> fine;
            for (const SweepEntry& e : sweep) {
                for (const InequalityParams& q : e.points) {
                    SuiteRecord rec;
                    try {
                        rec.report = ev.check(e.id, q);
                        rec.report.trial = t;
                        if (rec.report.asserted && rec.report.verdict == Verdict::ViolationCandidate) {
                            if (!fine) fine.emplace(pair, check_config(config, 1));
                            const InequalityReport r2 = fine->check(e.id, q);
                            rec.refined = true;
                            rec.refined_rel_slack = r2.rel_slack;
                            rec.persistent = r2.verdict == Verdict::ViolationCandidate;
                        }
                    } catch (const GeometryError& err) {
                        out.errors.push_back({e.id, dim, q, t, err.what()});
                        continue;
                    }
                    update(out.summary[e.id], rec);
                    if (rec.persistent) ++out.persistent_violations;
                    out.records.push_back(std::move(rec));
                }
            }
        }
    }
    return out;
}

EqualityResult run_equality(const SuiteConfig& config) {
    validate(config);
    EqualityResult out;
    const CheckConfig cc = check_config(config);
    for (int dim : config.dims) {
        for (const std::string& id : equality_ids()) {
            for (int f = 0; f < config.families; ++f) {
                const std::uint64_t fs = config.seed + static_cast<std::uint64_t>(f);
                EqualityProbeResult r;
                try {
                    r = equality_probe(id, dim, fs, cc);
                } catch (const GeometryError& err) {
                    out.errors.push_back({id, dim, {}, f, err.what()});
                    continue;
                }
                for (InequalityReport& w : r.witnesses) {
                    w.trial = f;
                    EqualityRecord rec{w, fs, true, std::abs(w.rel_slack) <= w.tolerance};
                    if (!rec.within_tolerance) ++out.witness_failures;
                    out.records.push_back(std::move(rec));
                }
                for (InequalityReport& w : r.perturbed) {
                    w.trial = f;
                    out.records.push_back({w, fs, false, true});
                }
            }
        }
        for (const ReductionResult& c : reduction_chains(dim, static_cast<int>(config.trials), config.seed, cc)) {
            if (!(c.max_rel_diff <= c.tolerance)) ++out.chain_failures;
            out.chains.emplace_back(dim, c);
        }
    }
    return out;
}

SearchResult run_search(const SuiteConfig& config) {
    validate(config);
    SearchResult out;
    constexpr int dim = 3;
    SearchConfig sc;
    sc.ball_level = config.ball_level;
    sc.grid_level = config.grid_level;
    sc.nest = config.nest;
    sc.tolerance = config.search_tolerance;
    for (const std::string& problem : config.problems) {
        const bool projection = problem == "problem2" || problem == "af_special_pi";
        std::vector<int> rs = config.r_values;
        if (rs.empty()) rs = projection ? std::vector<int>{1, 2} : std::vector<int>{2, 3};
        for (int r : rs) {
            if (r > (projection ? dim - 1 : dim)) continue;
            SearchReport rep = conjecture_search(problem, dim, r, config.trials, config.seed, sc);
            const bool points = problem == "af_special" || problem == "af_special_pi";
            if (points && rep.violation_candidate) ++out.contract_violations;
            out.reports.push_back(std::move(rep));
        }
    }
    const long n_spec = std::min<long>(config.trials, 200);
    std::map<std::string, SpecializationSummary> acc;
    std::vector<std::string> order;
    for (long t = 0; t < n_spec; ++t) {
        const BodyPair pair = make_trial_instance(config.seed, dim, static_cast<int>(t));
        for (const SpecializationReport& s : remark_specializations(pair, config.grid_level)) {
            auto it = acc.find(s.name);
            if (it == acc.end()) {
                order.push_back(s.name);
                it = acc.emplace(s.name, SpecializationSummary{s.name, 0, kInf, -kInf}).first;
            }
            ++it->second.trials;
            it->second.min_rel_slack = std::min(it->second.min_rel_slack, s.rel_slack);
            it->second.max_rel_slack = std::max(it->second.max_rel_slack, s.rel_slack);
        }
    }
    for (const std::string& name : order) out.specializations.push_back(acc.at(name));
    return out;
}

SelftestResult run_selftest(const SuiteConfig& config) {
    validate(config);
    SelftestResult out;
    std::mt19937_64 rng(config.seed);
    const int per_dim = 10;

    {
        OracleResult o{"steiner_fit vs closed form", 0, 0, 0.0, "|fit - W_i| - bracket, absolute"};
        for (int dim : config.dims) {
            for (int b = 0; b < per_dim; ++b) {
                const Polytope K = random_body(config.seed + 100 + b, dim, static_cast<BodyKind>(b % 3));
                const QuermassVector fit = steiner_fit(K, config.ball_level);
                for (int i = 0; i <= dim; ++i) {
                    const double w = quermassintegral(K, i);
                    const double excess = std::abs(fit.values[i] - w) - fit.half_widths[i];
                    ++o.checks;
                    o.max_error = std::max(o.max_error, excess);
                    if (excess > 1e-6 * std::max(1.0, std::abs(w))) ++o.failures;
                }
            }
        }
        out.oracles.push_back(o);
    }
    {
        OracleResult o{"mixed quermassintegral: inclusion-exclusion vs difference quotient", 0, 0, 0.0, "relative"};
        for (int dim : config.dims) {
            const int level = dim == 2 ? kOracleBallLevel2D : kOracleBallLevel3D;
            for (int b = 0; b < per_dim; ++b) {
                const Polytope K = random_body(config.seed + 200 + b, dim, static_cast<BodyKind>(b % 3));
                const Polytope L = random_body(config.seed + 300 + b, dim, static_cast<BodyKind>((b + 1) % 3));
                for (int i = 0; i < dim; ++i) {
                    const double a = mixed_quermassintegral(K, L, i, level).value;
                    const double q = mixed_quermass_difference_quotient(K, L, i);
                    const double rel = std::abs(a - q) / std::abs(q);
                    ++o.checks;
                    o.max_error = std::max(o.max_error, rel);
                    if (!(rel <= 1e-4)) ++o.failures;
                }
            }
        }
        out.oracles.push_back(o);
    }
    {
        OracleResult o{"Monte Carlo volume", 0, 0, 0.0, "|estimate - exact| in standard errors"};
        for (int dim : config.dims) {
            for (int b = 0; b < per_dim; ++b) {
                const Polytope K = random_body(config.seed + 400 + b, dim, static_cast<BodyKind>(b % 3));
                double se = 0.0;
                const double est = monte_carlo_volume(K, kMonteCarloSamples, rng, se);
                const double z = std::abs(est - K.volume()) / se;
                ++o.checks;
                o.max_error = std::max(o.max_error, z);
                if (!(z <= 3.0)) ++o.failures;
            }
        }
        out.oracles.push_back(o);
    }
    {
        OracleResult o{"projection body of the unit cube", 0, 0, 0.0, "|h(u) - |u|_1|, absolute"};
        const Polytope cube = box({0, 0, 0}, {1, 1, 1}, 3);
        const std::vector<const Polytope*> slots{&cube, &cube};
        const std::vector<Vec> grid = sphere_directions(3, config.grid_level);
        const Polytope pi = projection_body(cube, config.grid_level);
        for (const Vec& u : grid) {
            const double expect = std::abs(u[0]) + std::abs(u[1]) + std::abs(u[2]);
            const double e1 = std::abs(projection_support(slots, 3, u) - expect);
            const double e2 = std::abs(support(pi, u) - expect);
            o.checks += 2;
            o.max_error = std::max({o.max_error, e1, e2});
            o.failures += (e1 > 1e-9) + (e2 > 1e-9);
        }
        out.oracles.push_back(o);
    }
    {
        OracleResult o{"unit cube and square closed forms", 0, 0, 0.0, "absolute"};
        const double pi = std::numbers::pi;
        const Polytope cube = box({0, 0, 0}, {1, 1, 1}, 3);
        const Polytope square = box({0, 0, 0}, {1, 1, 0}, 2);
        const double w3[] = {1.0, 2.0, pi, 4.0 * pi / 3.0};
        const double w2[] = {1.0, 2.0, pi};
        for (int i = 0; i <= 3; ++i) {
            const double e = std::abs(quermassintegral(cube, i) - w3[i]);
            ++o.checks;
            o.max_error = std::max(o.max_error, e);
            o.failures += e > 1e-12;
        }
        for (int i = 0; i <= 2; ++i) {
            const double e = std::abs(quermassintegral(square, i) - w2[i]);
            ++o.checks;
            o.max_error = std::max(o.max_error, e);
            o.failures += e > 1e-12;
        }
        out.oracles.push_back(o);
    }
    {
        OracleResult o{"scalar lemmas", 0, 0, 0.0, "most negative check value"};
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst = 0.0;
        for (int s = 0; s < 10000; ++s) {
            const int m = 2 + static_cast<int>(U(rng) * 4);
            const double p = 1.0 + 4.0 * U(rng) + 1e-6;
            std::vector<double> a(m), b(m);
            a[0] = 1.0 + U(rng);
            b[0] = 1.0 + U(rng);
            // Keep a1^p - sum ai^p positive.
            for (int k = 1; k < m; ++k) {
                a[k] = a[0] * std::pow(U(rng) / m, 1.0 / p) + 1e-9;
                b[k] = b[0] * std::pow(U(rng) / m, 1.0 / p) + 1e-9;
            }
            const double v = bellman_check(a, b, p);
            const double alpha = 0.01 + 0.98 * U(rng);
            const double A = 0.1 + U(rng), C = 0.1 + U(rng);
            const double w = scalar_lemma4_check(A, A * (0.01 + 0.98 * U(rng)), C, C * (0.01 + 0.98 * U(rng)), alpha);
            o.checks += 2;
            worst = std::min({worst, v, w});
            o.failures += (v < -1e-12) + (w < -1e-12);
        }
        o.max_error = -worst;
        out.oracles.push_back(o);
    }
    for (const OracleResult& o : out.oracles) out.mismatches += o.failures;
    return out;
}

std::string verify_json(const SuiteConfig& config, const VerifyResult& result) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_echo"] = config_echo(config, "verify");
    j["reports"] = ordered_json::array();
    for (const SuiteRecord& rec : result.records) {
        ordered_json r = report_json(rec.report);
        if (rec.refined) r["refined_rel_slack"] = number(rec.refined_rel_slack);
        r["persistent"] = rec.persistent;
        j["reports"].push_back(std::move(r));
    }
    ordered_json per_id = ordered_json::object();
    for (const std::string& id : inequality_ids()) {
        auto it = result.summary.find(id);
        if (it == result.summary.end()) continue;
        const IdSummary& s = it->second;
        ordered_json e;
        e["count"] = s.count;
        e["asserted"] = s.asserted;
        e["min_rel_slack"] = number(s.min_rel_slack);
        e["logged_min_rel_slack"] = number(s.logged_min_rel_slack);
        e["equalities"] = s.equalities;
        e["violation_candidates"] = s.violation_candidates;
        e["persistent"] = s.persistent;
        per_id[id] = e;
    }
    ordered_json summary;
    summary["per_id"] = per_id;
    summary["records"] = result.records.size();
    summary["persistent_violations"] = result.persistent_violations;
    summary["errors"] = ordered_json::array();
    for (const SuiteError& e : result.errors) summary["errors"].push_back(error_json(e));
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

std::string verify_csv(const VerifyResult& result) {
    std::ostringstream os;
    os << "inequality_id,dim,i,j,p,trial,lhs,rhs,slack,rel_slack,tolerance,uncertainty,verdict,asserted,refined_rel_slack,"
          "persistent\n";
    for (const SuiteRecord& rec : result.records) {
        const InequalityReport& r = rec.report;
        os << r.inequality_id << ',' << r.dim << ',' << r.params.i << ',' << r.params.j << ',' << fmt(r.params.p) << ','
           << r.trial << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.slack) << ',' << fmt(r.rel_slack) << ','
           << fmt(r.tolerance) << ',' << fmt(r.uncertainty) << ',' << to_string(r.verdict) << ','
           << (r.asserted ? "true" : "false") << ',' << (rec.refined ? fmt(rec.refined_rel_slack) : "") << ','
           << (rec.persistent ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string equality_json(const SuiteConfig& config, const EqualityResult& result) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_echo"] = config_echo(config, "equality");
    j["reports"] = ordered_json::array();
    for (const EqualityRecord& rec : result.records) {
        ordered_json r = report_json(rec.report);
        r["family_seed"] = rec.family_seed;
        r["kind"] = rec.witness ? "witness" : "perturbed";
        r["within_tolerance"] = rec.within_tolerance;
        j["reports"].push_back(std::move(r));
    }
    j["reduction_chains"] = ordered_json::array();
    for (const auto& [dim, c] : result.chains) {
        ordered_json e;
        e["dim"] = dim;
        e["chain"] = c.name;
        e["max_rel_diff"] = number(c.max_rel_diff);
        e["tolerance"] = c.tolerance;
        e["agrees"] = c.max_rel_diff <= c.tolerance;
        j["reduction_chains"].push_back(e);
    }
    ordered_json summary;
    summary["witnesses"] = std::count_if(result.records.begin(), result.records.end(), [](const auto& r) { return r.witness; });
    summary["witness_failures"] = result.witness_failures;
    summary["chain_failures"] = result.chain_failures;
    summary["errors"] = ordered_json::array();
    for (const SuiteError& e : result.errors) summary["errors"].push_back(error_json(e));
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

std::string equality_csv(const EqualityResult& result) {
    std::ostringstream os;
    os << "kind,inequality_id,dim,i,j,p,family_seed,lhs,rhs,rel_slack,tolerance,verdict,within_tolerance\n";
    for (const EqualityRecord& rec : result.records) {
        const InequalityReport& r = rec.report;
        os << (rec.witness ? "witness" : "perturbed") << ',' << r.inequality_id << ',' << r.dim << ',' << r.params.i << ','
           << r.params.j << ',' << fmt(r.params.p) << ',' << rec.family_seed << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
           << fmt(r.rel_slack) << ',' << fmt(r.tolerance) << ',' << to_string(r.verdict) << ','
           << (rec.within_tolerance ? "true" : "false") << '\n';
    }
    for (const auto& [dim, c] : result.chains) {
        os << "chain," << c.name << ',' << dim << ",,,,,,,," << fmt(c.max_rel_diff) << ',' << fmt(c.tolerance) << ",,"
           << (c.max_rel_diff <= c.tolerance ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string search_json(const SuiteConfig& config, const SearchResult& result) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_echo"] = config_echo(config, "search");
    j["reports"] = ordered_json::array();
    long findings = 0;
    for (const SearchReport& r : result.reports) {
        const bool open = r.problem_id == "problem1" || r.problem_id == "problem2";
        findings += open && r.violation_candidate;
        ordered_json e;
        e["problem_id"] = r.problem_id;
        e["dim"] = r.dim;
        e["r"] = r.r;
        e["trials"] = r.trials;
        e["seed"] = r.seed;
        e["min_rel_slack"] = number(r.min_rel_slack);
        e["worst_trial"] = r.worst_trial;
        e["worst_lhs"] = number(r.worst_lhs);
        e["worst_rhs"] = number(r.worst_rhs);
        e["violation_candidate"] = r.violation_candidate;
        e["persistent"] = r.persistent;
        e["open_problem"] = open;
        e["worst_instance"] = ordered_json::parse(r.worst_instance);
        j["reports"].push_back(std::move(e));
    }
    j["specializations"] = ordered_json::array();
    for (const SpecializationSummary& s : result.specializations) {
        ordered_json e;
        e["name"] = s.name;
        e["trials"] = s.trials;
        e["min_rel_slack"] = number(s.min_rel_slack);
        e["max_rel_slack"] = number(s.max_rel_slack);
        j["specializations"].push_back(e);
    }
    ordered_json summary;
    summary["open_problem_findings"] = findings;
    summary["contract_violations"] = result.contract_violations;
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

std::string search_csv(const SearchResult& result) {
    std::ostringstream os;
    os << "problem_id,dim,r,trials,seed,min_rel_slack,worst_trial,worst_lhs,worst_rhs,violation_candidate,persistent\n";
    for (const SearchReport& r : result.reports) {
        os << r.problem_id << ',' << r.dim << ',' << r.r << ',' << r.trials << ',' << r.seed << ',' << fmt(r.min_rel_slack)
           << ',' << r.worst_trial << ',' << fmt(r.worst_lhs) << ',' << fmt(r.worst_rhs) << ','
           << (r.violation_candidate ? "true" : "false") << ',' << (r.persistent ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string selftest_json(const SuiteConfig& config, const SelftestResult& result) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_echo"] = config_echo(config, "selftest");
    j["oracles"] = ordered_json::array();
    for (const OracleResult& o : result.oracles) {
        ordered_json e;
        e["name"] = o.name;
        e["checks"] = o.checks;
        e["failures"] = o.failures;
        e["max_error"] = number(o.max_error);
        e["units"] = o.detail;
        j["oracles"].push_back(e);
    }
    j["summary"] = {{"mismatches", result.mismatches}};
    return j.dump(2) + "\n";
}

std::string selftest_csv(const SelftestResult& result) {
    std::ostringstream os;
    os << "oracle,checks,failures,max_error\n";
    for (const OracleResult& o : result.oracles)
        os << '"' << o.name << "\"," << o.checks << ',' << o.failures << ',' << fmt(o.max_error) << '\n';
    return os.str();
}

}  // namespace quermass
