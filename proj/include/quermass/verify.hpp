#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quermass/polytope.hpp"

namespace quermass {

// ---- scalar lemmas --------------------------------------------------------

// RHS - LHS of Bellman's inequality:
// ((a1+b1)^p - sum (ai+bi)^p)^(1/p) - (a1^p - sum ai^p)^(1/p) - (b1^p - sum bi^p)^(1/p).
double bellman_check(std::span<const double> a, std::span<const double> b, double p);

// a^alpha c^beta - b^alpha d^beta - (a-b)^alpha (c-d)^beta, beta = 1 - alpha.
double scalar_lemma4_check(double a, double b, double c, double d, double alpha);

// ---- random instances -----------------------------------------------------

enum class BodyKind { HullOfGaussians, RandomZonotope, RandomSimplexLike };

const char* to_string(BodyKind kind);

// Deterministic in (seed, dim, kind). Recentered at the centroid and scaled
// to a diameter drawn from [1, 4].
Polytope random_body(std::uint64_t seed, int dim, BodyKind kind);

// K, an optional L, D inside K and D' = ratio D + t.
struct BodyPair {
    Polytope K;
    std::optional<Polytope> L;
    Polytope D;
    Polytope Dprime;
    double homothety_ratio = 1.0;
    Vec translation{};  // D' = ratio (D - centroid(D)) + centroid(D) + translation
    std::uint64_t seed = 0;
};

struct NestOptions {
    // Random offset of D' (times diam(D)) when no L constrains it.
    double translation_scale = 0.05;
};

// D = shrink (K - c_K) + c_K. With L, D' is centred at c_L plus a small
// random offset, halved until D' fits in L. Without L, D' sits at c_D plus
// a random offset.
BodyPair nested_pair(const Polytope& K, const std::optional<Polytope>& L, double shrink, double ratio,
                     std::uint64_t seed, const NestOptions& options = {});

// Largest ratio r (to 1e-9 relative) such that r (D - c_D) + c_L lies in L.
double max_homothety_ratio(const Polytope& L, const Polytope& D);

// The trial instance used by the verification suites.
BodyPair make_trial_instance(std::uint64_t seed, int dim, int trial);

// ---- inequality checks ----------------------------------------------------

enum class Verdict { Holds, Equality, ViolationCandidate };

const char* to_string(Verdict v);

struct InequalityParams {
    int i = 0;
    int j = 0;
    double p = 1.0;
};

struct CheckConfig {
    int ball_level = 3;
    int grid_level = 3;
    std::map<std::string, double> tolerance_overrides;
    // Test hook: ids whose slack sign is flipped after evaluation.
    std::vector<std::string> inject_flip;
};

struct InequalityReport {
    std::string inequality_id;
    int dim = 0;
    InequalityParams params;
    long trial = -1;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;      // lhs - rhs
    double rel_slack = 0.0;  // slack / max(|lhs|, |rhs|, 1e-300)
    double tolerance = 0.0;  // tier + relative uncertainty
    double uncertainty = 0.0;  // absolute bound on the slack's approximation error
    Verdict verdict = Verdict::Holds;
    bool asserted = true;  // false outside the statement's hypotheses
};

// One id and the parameter points it is swept over in dimension `dim`.
struct SweepEntry {
    std::string id;
    std::vector<InequalityParams> points;
};

// All ids in suite order.
const std::vector<std::string>& inequality_ids();
std::vector<SweepEntry> default_sweep(int dim, std::span<const double> p_values);

// Whether (id, dim, params) lies inside the statement's hypotheses.
bool is_asserted(const std::string& id, int dim, const InequalityParams& params);

// Tier tolerance before uncertainty (1e-9 exact, 1e-4 one layer, 1e-3 two).
double tier_tolerance(const std::string& id, int dim, const InequalityParams& params);

// Lazily evaluated quantities of one instance, shared by all checks.
class InstanceEvaluator {
public:
    InstanceEvaluator(BodyPair pair, CheckConfig config);
    ~InstanceEvaluator();
    InstanceEvaluator(InstanceEvaluator&&) noexcept;
    InstanceEvaluator& operator=(InstanceEvaluator&&) noexcept;

    const BodyPair& pair() const;
    const CheckConfig& config() const;
    int dim() const;

    InequalityReport check(const std::string& id, const InequalityParams& params);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

InequalityReport check_inequality(const std::string& id, const BodyPair& instance, const InequalityParams& params,
                                  const CheckConfig& config);

// Verdict from slack and tolerance; snaps relative differences below 1e-12
// to zero first.
Verdict classify(double rel_slack, double tolerance);

// ---- equality probes ------------------------------------------------------

struct EqualityProbeResult {
    std::vector<InequalityReport> witnesses;  // asserted: |rel_slack| <= tolerance
    std::vector<InequalityReport> perturbed;  // recorded only
};

// Ids that carry an equality clause.
const std::vector<std::string>& equality_ids();

EqualityProbeResult equality_probe(const std::string& id, int dim, std::uint64_t family_seed, const CheckConfig& config);

// Reduction chains: thm1 at p=1 vs thmA, cor1 at i=0 vs thmC, cor3 vs thm4 at
// (i=0, j=1). Returns the largest relative disagreement per chain.
struct ReductionResult {
    std::string name;
    double max_rel_diff = 0.0;
    double tolerance = 0.0;
};
std::vector<ReductionResult> reduction_chains(int dim, int trials, std::uint64_t seed, const CheckConfig& config);

// ---- conjecture search ----------------------------------------------------

enum class NestMode { Homothetic, Random };

const char* to_string(NestMode mode);

struct SearchConfig {
    int ball_level = 3;
    int grid_level = 3;
    NestMode nest = NestMode::Homothetic;
    double tolerance = 1e-3;
};

struct SearchReport {
    std::string problem_id;  // problem1, problem2, af_special, af_special_pi
    int dim = 3;
    int r = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    double min_rel_slack = 0.0;
    long worst_trial = -1;
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    bool violation_candidate = false;
    bool persistent = false;  // negative after refinement
    std::string worst_instance;  // JSON text
    double elapsed_seconds = 0.0;  // not serialized
};

SearchReport conjecture_search(const std::string& problem_id, int dim, int r, long trials, std::uint64_t seed,
                               const SearchConfig& config = {});

// Re-evaluates a serialized worst instance; returns {lhs, rhs, rel_slack}.
struct SearchEvaluation {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_slack = 0.0;
};
SearchEvaluation evaluate_search_instance(const std::string& instance_json, int grid_level);

// Remark specialisations on a single (K, L, D, D') instance: the r = n
// problem-1 form against the mixed volume difference inequality, and the
// projection form with both printed exponents.
struct SpecializationReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_slack = 0.0;
};
std::vector<SpecializationReport> remark_specializations(const BodyPair& instance, int grid_level);

}  // namespace quermass
