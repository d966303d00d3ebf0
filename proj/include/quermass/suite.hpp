#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quermass/verify.hpp"

namespace quermass {

inline constexpr const char* kToolVersion = "0.1.0";

struct SuiteConfig {
    std::vector<int> dims{2, 3};
    long trials = 200;
    std::uint64_t seed = 42;
    std::vector<int> i_values;  // empty: every index in range
    std::vector<int> j_values;
    std::vector<double> p_values{1.0, 1.5, 2.0, 3.0};
    int ball_level = 3;
    int grid_level = 3;
    std::map<std::string, double> tolerance_overrides;
    std::vector<std::string> inject_flip;
    std::string output_path;
    std::string output_format = "json";  // json or csv

    // search only
    std::vector<std::string> problems{"problem1", "problem2", "af_special", "af_special_pi"};
    std::vector<int> r_values;  // empty: problem1 {2, 3}, problem2 {1, 2}
    NestMode nest = NestMode::Homothetic;
    double search_tolerance = 1e-3;
    // equality only
    int families = 3;
};

// Throws GeometryError(InvalidArgument) on a bad configuration.
void validate(const SuiteConfig& config);

struct SuiteRecord {
    InequalityReport report;
    bool refined = false;  // re-evaluated one level finer
    double refined_rel_slack = 0.0;
    bool persistent = false;  // still a violation candidate after refinement
};

struct SuiteError {
    std::string inequality_id;
    int dim = 0;
    InequalityParams params;
    long trial = -1;
    std::string message;
};

struct IdSummary {
    long count = 0;
    long asserted = 0;
    double min_rel_slack = 0.0;         // over asserted records
    double logged_min_rel_slack = 0.0;  // over records outside the hypotheses
    long equalities = 0;
    long violation_candidates = 0;
    long persistent = 0;
};

struct VerifyResult {
    std::vector<SuiteRecord> records;
    std::vector<SuiteError> errors;
    std::map<std::string, IdSummary> summary;
    long persistent_violations = 0;
};

VerifyResult run_verify(const SuiteConfig& config);

struct EqualityRecord {
    InequalityReport report;
    std::uint64_t family_seed = 0;
    bool witness = true;  // false: perturbed, recorded only
    bool within_tolerance = true;
};

struct EqualityResult {
    std::vector<EqualityRecord> records;
    std::vector<std::pair<int, ReductionResult>> chains;  // (dim, chain)
    std::vector<SuiteError> errors;
    long witness_failures = 0;
    long chain_failures = 0;
};

EqualityResult run_equality(const SuiteConfig& config);

struct SpecializationSummary {
    std::string name;
    long trials = 0;
    double min_rel_slack = 0.0;
    double max_rel_slack = 0.0;
};

struct SearchResult {
    std::vector<SearchReport> reports;
    std::vector<SpecializationSummary> specializations;
    // Violations in the point (Aleksandrov-Fenchel) specialisations. Open
    // problem candidates are findings and do not count here.
    long contract_violations = 0;
};

// Searches in dimension 3.
SearchResult run_search(const SuiteConfig& config);

struct OracleResult {
    std::string name;
    long checks = 0;
    long failures = 0;
    double max_error = 0.0;  // in the oracle's own units
    std::string detail;
};

struct SelftestResult {
    std::vector<OracleResult> oracles;
    long mismatches = 0;
};

SelftestResult run_selftest(const SuiteConfig& config);

// Serialisation. Output is deterministic: no timings, fixed key order.
std::string verify_json(const SuiteConfig& config, const VerifyResult& result);
std::string verify_csv(const VerifyResult& result);
std::string equality_json(const SuiteConfig& config, const EqualityResult& result);
std::string equality_csv(const EqualityResult& result);
std::string search_json(const SuiteConfig& config, const SearchResult& result);
std::string search_csv(const SearchResult& result);
std::string selftest_json(const SuiteConfig& config, const SelftestResult& result);
std::string selftest_csv(const SelftestResult& result);

}  // namespace quermass
