#include <doctest.h>

#include <json.hpp>

#include "quermass/suite.hpp"

using namespace quermass;
using nlohmann::json;

namespace {

SuiteConfig small() {
    SuiteConfig c;
    c.dims = {2};
    c.trials = 2;
    c.i_values = {0};
    c.p_values = {1.0, 2.0};
    return c;
}

}  // namespace

TEST_CASE("configuration validation") {
    CHECK_NOTHROW(validate(SuiteConfig{}));
    auto bad = [](auto edit) {
        SuiteConfig c;
        edit(c);
        CHECK_THROWS_AS(validate(c), GeometryError);
    };
    bad([](SuiteConfig& c) { c.dims = {4}; });
    bad([](SuiteConfig& c) { c.dims = {}; });
    bad([](SuiteConfig& c) { c.trials = 0; });
    bad([](SuiteConfig& c) { c.i_values = {3}; });
    bad([](SuiteConfig& c) { c.j_values = {-1}; });
    bad([](SuiteConfig& c) { c.p_values = {0.5}; });
    bad([](SuiteConfig& c) { c.ball_level = 6; });
    bad([](SuiteConfig& c) { c.grid_level = 9; });
    bad([](SuiteConfig& c) { c.tolerance_overrides["bm.eq1"] = 0.0; });
    bad([](SuiteConfig& c) { c.tolerance_overrides["nosuch"] = 1.0; });
    bad([](SuiteConfig& c) { c.output_format = "xml"; });
    bad([](SuiteConfig& c) { c.problems = {"problem7"}; });
    bad([](SuiteConfig& c) { c.r_values = {5}; });
}

TEST_CASE("verify report layout") {
    const SuiteConfig c = small();
    const VerifyResult r = run_verify(c);
    CHECK(r.errors.empty());
    CHECK(r.persistent_violations == 0);
    const json j = json::parse(verify_json(c, r));
    CHECK(j.at("tool_version") == kToolVersion);
    CHECK(j.at("config_echo").at("command") == "verify");
    CHECK(j.at("config_echo").at("seed") == 42);
    CHECK(j.at("reports").size() == r.records.size());
    const json& first = j.at("reports").at(0);
    for (const char* key : {"inequality_id", "dim", "i", "j", "p", "trial", "lhs", "rhs", "slack", "rel_slack",
                            "tolerance", "uncertainty", "verdict", "asserted", "persistent"}) {
        CHECK(first.contains(key));
    }
    CHECK(j.at("summary").at("per_id").contains("bm.eq1"));
    CHECK(j.at("summary").at("persistent_violations") == 0);
    CHECK(verify_json(c, run_verify(c)) == verify_json(c, r));
    const std::string csv = verify_csv(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.records.size()) + 1);
}

TEST_CASE("filters and injected failures") {
    SuiteConfig c = small();
    c.inject_flip = {"bm.eq1"};
    const VerifyResult r = run_verify(c);
    CHECK(r.persistent_violations == c.trials);
    c.tolerance_overrides["bm.eq1"] = 10.0;
    CHECK(run_verify(c).persistent_violations == 0);
}

TEST_CASE("selftest in the plane") {
    SuiteConfig c;
    c.dims = {2};
    const SelftestResult r = run_selftest(c);
    CHECK(r.mismatches == 0);
    CHECK(r.oracles.size() >= 4);
    const json j = json::parse(selftest_json(c, r));
    CHECK(j.at("summary").at("mismatches") == 0);
}

TEST_CASE("search report layout") {
    SuiteConfig c;
    c.trials = 5;
    c.problems = {"problem1", "af_special"};
    c.r_values = {2};
    const SearchResult r = run_search(c);
    CHECK(r.reports.size() == 2);
    CHECK(r.contract_violations == 0);
    const json j = json::parse(search_json(c, r));
    CHECK(j.at("reports").at(0).at("worst_instance").at("problem") == "problem1");
    CHECK(j.at("reports").at(0).at("open_problem") == true);
    CHECK(j.at("reports").at(1).at("open_problem") == false);
    CHECK_FALSE(j.at("specializations").empty());
}
