// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   acceptance --criterion N   (N in 1..6, or "all")

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "quermass/functionals.hpp"
#include "quermass/projection.hpp"
#include "quermass/suite.hpp"
#include "quermass/verify.hpp"

using namespace quermass;

namespace {

// Pinned tolerances and sizes.
constexpr long kScalarSamples = 100'000;
constexpr double kScalarEqualityTol = 1e-10;
constexpr double kScalarRuntime = 5.0;

constexpr int kSteinerBodies = 50;  // per dimension
constexpr int kSteinerLevel = 3;
constexpr double kSteinerAbs = 1e-6;
constexpr int kPairsPerDim = 50;
constexpr int kPairLevel2D = 8;
constexpr int kPairLevel3D = 5;
constexpr double kPairRel = 1e-4;
constexpr int kMonteCarloBodies = 20;
constexpr long kMonteCarloSamples = 1'000'000;
constexpr double kMonteCarloSE = 3.0;
constexpr double kCubeSupportTol = 1e-9;
constexpr double kOracleRuntime = 120.0;

constexpr double kVerifyRuntime = 15 * 60.0;
constexpr double kEqualityRuntime = 5 * 60.0;

constexpr long kSearchTrials = 10'000;
constexpr double kSpecialTol = 1e-3;
constexpr long kRepeatTrials = 200;
constexpr double kSearchRuntime = 30 * 60.0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// ---- 1 ----------------------------------------------------------------------

Outcome scalar_lemmas() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::uniform_real_distribution<double> pd(1.0 + 1e-6, 4.0);
    std::uniform_int_distribution<int> len(2, 5);
    long negative = 0;
    double worst_eq = 0.0;
    for (long t = 0; t < kScalarSamples; ++t) {
        const int m = len(rng);
        const double p = pd(rng);
        std::vector<double> a(m), b(m), c(m);
        double sa = 0.0, sb = 0.0;
        for (int k = 1; k < m; ++k) {
            a[k] = u(rng);
            b[k] = u(rng);
            sa += std::pow(a[k], p);
            sb += std::pow(b[k], p);
        }
        a[0] = std::pow(sa, 1.0 / p) * (1.0 + u(rng));
        b[0] = std::pow(sb, 1.0 / p) * (1.0 + u(rng));
        negative += bellman_check(a, b, p) < 0.0;
        const double ups = 0.1 + 2.0 * u(rng);
        for (int k = 0; k < m; ++k) c[k] = ups * a[k];
        worst_eq = std::max(worst_eq, std::abs(bellman_check(a, c, p)));
    }
    long negative4 = 0;
    double worst_eq4 = 0.0;
    std::uniform_real_distribution<double> al(1e-3, 1.0 - 1e-3);
    for (long t = 0; t < kScalarSamples; ++t) {
        const double b = u(rng), d = u(rng);
        const double a = b + u(rng), c = d + u(rng);
        const double alpha = al(rng);
        negative4 += scalar_lemma4_check(a, b, c, d, alpha) < 0.0;
        const double s = 1.0 + 3.0 * u(rng);
        worst_eq4 = std::max(worst_eq4, std::abs(scalar_lemma4_check(s * b, b, s * d, d, alpha)));
    }
    const double secs = seconds_since(t0);
    Outcome o;
    o.pass = negative == 0 && negative4 == 0 && worst_eq <= kScalarEqualityTol && worst_eq4 <= kScalarEqualityTol &&
             secs < kScalarRuntime;
    o.detail = "bellman negatives " + std::to_string(negative) + ", equality " + fmt("%.2e", worst_eq) +
               "; lemma4 negatives " + std::to_string(negative4) + ", equality " + fmt("%.2e", worst_eq4) + "; " +
               fmt("%.2f s", secs);
    return o;
}

// ---- 2 ----------------------------------------------------------------------

// Independent volume estimate: uniform samples in the bounding box tested
// against the facet halfspaces.
double monte_carlo(const Polytope& K, std::mt19937_64& rng, double& se) {
    const int n = K.dim();
    Vec lo = K.vertices()[0], hi = lo;
    for (const Vec& v : K.vertices())
        for (int k = 0; k < n; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    double box_volume = 1.0;
    for (int k = 0; k < n; ++k) box_volume *= hi[k] - lo[k];
    std::uniform_real_distribution<double> u(0.0, 1.0);
    long inside = 0;
    for (long s = 0; s < kMonteCarloSamples; ++s) {
        Vec x{};
        for (int k = 0; k < n; ++k) x[k] = lo[k] + (hi[k] - lo[k]) * u(rng);
        bool in = true;
        for (const Facet& f : K.facets())
            if (dot(f.normal, x) > f.offset) {
                in = false;
                break;
            }
        inside += in;
    }
    const double q = static_cast<double>(inside) / kMonteCarloSamples;
    se = box_volume * std::sqrt(q * (1.0 - q) / kMonteCarloSamples);
    return box_volume * q;
}

Outcome oracles() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string detail;

    // (a)
    long fails_a = 0;
    double worst_a = 0.0;
    for (int n : {2, 3}) {
        for (int b = 0; b < kSteinerBodies; ++b) {
            const Polytope K = random_body(1000 + b, n, static_cast<BodyKind>(b % 3));
            const QuermassVector q = steiner_fit(K, kSteinerLevel);
            for (int i = 0; i <= n; ++i) {
                const double excess = std::abs(q.values[i] - quermassintegral(K, i)) - q.half_widths[i];
                worst_a = std::max(worst_a, excess);
                fails_a += excess > kSteinerAbs;
            }
        }
    }
    detail += "(a) fails " + std::to_string(fails_a) + " worst excess " + fmt("%.2e", worst_a);

    // (b)
    long fails_b = 0;
    double worst_b = 0.0;
    for (int n : {2, 3}) {
        for (int k = 0; k < kPairsPerDim; ++k) {
            const Polytope K = random_body(2000 + 2 * k, n, static_cast<BodyKind>(k % 3));
            const Polytope L = random_body(2001 + 2 * k, n, static_cast<BodyKind>((k + 1) % 3));
            for (int i = 1; i < n; ++i) {
                const Bracketed w = mixed_quermassintegral(K, L, i, n == 2 ? kPairLevel2D : kPairLevel3D);
                const double dq = mixed_quermass_difference_quotient(K, L, i);
                const double rel = std::abs(w.value - dq) / std::abs(dq);
                worst_b = std::max(worst_b, rel);
                fails_b += rel > kPairRel;
            }
        }
    }
    detail += "; (b) fails " + std::to_string(fails_b) + " worst rel " + fmt("%.2e", worst_b);

    // (c)
    long fails_c = 0;
    double worst_c = 0.0;
    std::mt19937_64 rng(77);
    for (int b = 0; b < kMonteCarloBodies; ++b) {
        const int n = b % 2 ? 3 : 2;
        const Polytope K = random_body(3000 + b, n, static_cast<BodyKind>(b % 3));
        double se = 0.0;
        const double est = monte_carlo(K, rng, se);
        const double z = std::abs(est - K.volume()) / se;
        worst_c = std::max(worst_c, z);
        fails_c += z > kMonteCarloSE;
    }
    detail += "; (c) fails " + std::to_string(fails_c) + " worst " + fmt("%.2f SE", worst_c);

    // (d)
    const Polytope cube = box({0, 0, 0}, {1, 1, 1}, 3);
    const std::vector<const Polytope*> slots{&cube, &cube};
    const ProjectionSpec spec{3, slots, projection_grid(3, 3, slots)};
    const Polytope pc = projection_body(spec);
    double worst_d = 0.0;
    for (const Vec& u : spec.grid) {
        const double l1 = std::abs(u[0]) + std::abs(u[1]) + std::abs(u[2]);
        worst_d = std::max({worst_d, std::abs(projection_support(slots, 3, u) - l1), std::abs(support(pc, u) - l1)});
    }
    const bool ok_d = worst_d <= kCubeSupportTol;
    detail += "; (d) " + std::to_string(spec.grid.size()) + " directions worst " + fmt("%.2e", worst_d);

    const double secs = seconds_since(t0);
    detail += "; " + fmt("%.1f s", secs);
    o.pass = fails_a == 0 && fails_b == 0 && fails_c == 0 && ok_d && secs < kOracleRuntime;
    o.detail = detail;
    return o;
}

// ---- 3 ----------------------------------------------------------------------

Outcome theorem_suites() {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteConfig c;  // dims {2,3}, 200 trials, seed 42, p {1,1.5,2,3}
    const VerifyResult r = run_verify(c);
    const double secs = seconds_since(t0);
    long candidates = 0;
    for (const auto& [id, s] : r.summary) candidates += s.violation_candidates;
    Outcome o;
    o.pass = r.persistent_violations == 0 && r.errors.empty() && secs < kVerifyRuntime;
    o.detail = std::to_string(r.records.size()) + " records over " + std::to_string(r.summary.size()) +
               " ids; candidates before refinement " + std::to_string(candidates) + ", persistent " +
               std::to_string(r.persistent_violations) + ", errors " + std::to_string(r.errors.size()) + "; " +
               fmt("%.1f s", secs);
    return o;
}

// ---- 4 ----------------------------------------------------------------------

Outcome equality_probes() {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteConfig c;
    const EqualityResult r = run_equality(c);
    const double secs = seconds_since(t0);
    long witnesses = 0;
    for (const EqualityRecord& rec : r.records) witnesses += rec.witness;
    std::string chains;
    for (const auto& [dim, ch] : r.chains) {
        chains += " " + ch.name + "@" + std::to_string(dim) + "=" + fmt("%.1e", ch.max_rel_diff);
    }
    Outcome o;
    o.pass = witnesses > 0 && r.witness_failures == 0 && r.chain_failures == 0 && r.errors.empty() &&
             secs < kEqualityRuntime;
    o.detail = std::to_string(witnesses) + " witnesses, failures " + std::to_string(r.witness_failures) +
               "; chains" + chains + "; chain failures " + std::to_string(r.chain_failures) + ", errors " +
               std::to_string(r.errors.size()) + "; " + fmt("%.1f s", secs);
    return o;
}

// ---- 5 ----------------------------------------------------------------------

Outcome conjecture_searches() {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteConfig c;
    c.trials = kSearchTrials;
    c.problems = {"problem1", "problem2", "af_special", "af_special_pi"};
    const SearchResult r = run_search(c);
    Outcome o;
    std::string detail;
    for (const SearchReport& s : r.reports) {
        detail += s.problem_id + " r=" + std::to_string(s.r) + " min " + fmt("%.4g", s.min_rel_slack) + "; ";
        // r = n for problem 1 and every point specialisation are held to the
        // bound; other open-problem results are findings only.
        const bool bound = (s.problem_id == "problem1" && s.r == 3) || s.problem_id == "af_special" ||
                           s.problem_id == "af_special_pi";
        if (bound && s.min_rel_slack < -kSpecialTol) o.pass = false;
        if (s.trials != kSearchTrials) o.pass = false;
    }
    for (const SpecializationSummary& s : r.specializations) {
        detail += s.name + " min " + fmt("%.4g", s.min_rel_slack) + "; ";
    }

    // Reproducibility: a second, smaller run twice, and the serialized worst
    // instances re-evaluated.
    SuiteConfig small = c;
    small.trials = kRepeatTrials;
    const std::string a = search_json(small, run_search(small));
    const SearchResult again = run_search(small);
    const bool same = a == search_json(small, again);
    bool reeval = true;
    for (const SearchReport& s : again.reports) {
        const SearchEvaluation e = evaluate_search_instance(s.worst_instance, small.grid_level);
        reeval = reeval && e.rel_slack == s.min_rel_slack && e.lhs == s.worst_lhs && e.rhs == s.worst_rhs;
    }
    for (const SearchReport& s : r.reports) {
        const SearchEvaluation e = evaluate_search_instance(s.worst_instance, c.grid_level);
        reeval = reeval && e.rel_slack == s.min_rel_slack;
    }
    const double secs = seconds_since(t0);
    detail += std::string("repeat ") + (same ? "identical" : "DIFFERS") + ", re-evaluation " +
              (reeval ? "bitwise" : "DIFFERS") + "; " + fmt("%.1f s", secs);
    o.pass = o.pass && r.contract_violations == 0 && same && reeval && secs < kSearchRuntime;
    o.detail = detail;
    return o;
}

// ---- 6 ----------------------------------------------------------------------

Outcome determinism() {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteConfig c;
    const std::string a = verify_json(c, run_verify(c));
    const std::string b = verify_json(c, run_verify(c));
    Outcome o;
    o.pass = a == b;
    o.detail = std::to_string(a.size()) + " bytes, " + (o.pass ? "identical" : "DIFFERENT") + "; " +
               fmt("%.1f s", seconds_since(t0));
    return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria{
    {"scalar lemma suite", scalar_lemmas},
    {"oracle equivalences", oracles},
    {"theorem suites", theorem_suites},
    {"equality probes and reduction chains", equality_probes},
    {"conjecture search", conjecture_searches},
    {"verify report determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
    std::string which = "all";
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--criterion" && k + 1 < argc) {
            which = argv[++k];
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N|all]\n", argv[0]);
            return 2;
        }
    }
    bool all_pass = true;
    bool ran = false;
    for (std::size_t k = 0; k < kCriteria.size(); ++k) {
        if (which != "all" && which != std::to_string(k + 1)) continue;
        ran = true;
        Outcome o;
        try {
            o = kCriteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %zu %s: %s: %s\n", k + 1, o.pass ? "PASS" : "FAIL", kCriteria[k].first, o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    if (!ran) {
        std::fprintf(stderr, "unknown criterion %s\n", which.c_str());
        return 2;
    }
    return all_pass ? 0 : 1;
}
