#include <doctest.h>

#include <cmath>
#include <sstream>

#include "quermass/body_io.hpp"
#include "quermass/verify.hpp"

using namespace quermass;

namespace {

std::string instance_json(const std::string& problem, int r, const std::vector<Polytope>& outer,
                          const std::vector<Polytope>& inner) {
    std::ostringstream os;
    os << R"({"problem": ")" << problem << R"(", "r": )" << r << R"(, "dim": 3, "bodies": [)";
    for (std::size_t k = 0; k < outer.size(); ++k) os << (k ? "," : "") << body_to_json_text(outer[k]);
    os << R"(], "nested": [)";
    for (std::size_t k = 0; k < inner.size(); ++k) os << (k ? "," : "") << body_to_json_text(inner[k]);
    os << "]}";
    return os.str();
}

}  // namespace

TEST_CASE("r = n with equal bodies gives zero slack") {
    const Polytope k = random_body(3, 3, BodyKind::HullOfGaussians);
    const Polytope d = scale_translate(k, 0.5, 0.5 * k.centroid());
    const SearchEvaluation e = evaluate_search_instance(instance_json("problem1", 3, {k, k, k}, {d, d, d}), 3);
    CHECK(e.rel_slack == 0.0);
    CHECK(e.lhs == doctest::Approx(std::pow(k.volume() - d.volume(), 3)));
}

TEST_CASE("r = n fails for orthogonal rods inside a cube") {
    // V(D1, D2, D3) is about 1/6 while every V(D_j) is about 0, so the left
    // side is (1 - 1/6)^3 against a right side near 1.
    const double w = 1e-3, lo = 0.5 - w / 2, hi = 0.5 + w / 2;
    const Polytope cube = box({0, 0, 0}, {1, 1, 1}, 3);
    const std::vector<Polytope> rods{box({0, lo, lo}, {1, hi, hi}, 3), box({lo, 0, lo}, {hi, 1, hi}, 3),
                                     box({lo, lo, 0}, {hi, hi, 1}, 3)};
    const SearchEvaluation e = evaluate_search_instance(instance_json("problem1", 3, {cube, cube, cube}, rods), 3);
    CHECK(e.lhs == doctest::Approx(std::pow(5.0 / 6.0, 3)).epsilon(1e-5));
    CHECK(e.rhs == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(e.rel_slack < -0.4);
}

TEST_CASE("point specialisations are nonnegative") {
    for (const char* problem : {"af_special", "af_special_pi"}) {
        const SearchReport r = conjecture_search(problem, 3, 2, 10, 5);
        CHECK(r.min_rel_slack >= 0.0);
        CHECK_FALSE(r.violation_candidate);
    }
}

TEST_CASE("search is deterministic and its worst instance re-evaluates bitwise") {
    const SearchReport a = conjecture_search("problem1", 3, 2, 30, 11);
    const SearchReport b = conjecture_search("problem1", 3, 2, 30, 11);
    CHECK(a.min_rel_slack == b.min_rel_slack);
    CHECK(a.worst_trial == b.worst_trial);
    CHECK(a.worst_instance == b.worst_instance);
    const SearchEvaluation e = evaluate_search_instance(a.worst_instance, 3);
    CHECK(e.lhs == a.worst_lhs);
    CHECK(e.rhs == a.worst_rhs);
    CHECK(e.rel_slack == a.min_rel_slack);

    const SearchReport c = conjecture_search("problem2", 3, 1, 4, 11);
    const SearchReport d = conjecture_search("problem2", 3, 1, 4, 11);
    CHECK(c.min_rel_slack == d.min_rel_slack);
}

TEST_CASE("search arguments") {
    CHECK_THROWS_AS(conjecture_search("problem1", 4, 2, 10, 1), GeometryError);
    CHECK_THROWS_AS(conjecture_search("problem1", 3, 4, 10, 1), GeometryError);
    CHECK_THROWS_AS(conjecture_search("problem2", 3, 3, 10, 1), GeometryError);
    CHECK_THROWS_AS(conjecture_search("problem3", 3, 1, 10, 1), GeometryError);
    CHECK_THROWS_AS(conjecture_search("problem1", 3, 1, 0, 1), GeometryError);
    CHECK_THROWS_AS(evaluate_search_instance("{}", 3), GeometryError);
}

TEST_CASE("remark specialisations match the verification pipeline") {
    const BodyPair pair = make_trial_instance(42, 3, 1);
    const std::vector<SpecializationReport> s = remark_specializations(pair, 3);
    auto find = [&](const std::string& name) {
        for (const SpecializationReport& r : s)
            if (r.name == name) return r;
        FAIL("missing " << name);
        return SpecializationReport{};
    };
    const SpecializationReport p1 = find("problem1(r=n; K..K,L; D..D,D')");
    const SpecializationReport c = find("thmC.eq6");
    CHECK(p1.lhs == doctest::Approx(c.lhs).epsilon(1e-9));
    CHECK(p1.rhs == doctest::Approx(c.rhs).epsilon(1e-9));
    const SpecializationReport p2 = find("problem2(r=n-1; K..K,L; D..D,D')");
    const SpecializationReport c3 = find("cor3.eq29");
    CHECK(p2.lhs == doctest::Approx(c3.lhs).epsilon(1e-9));
    CHECK(p2.rhs == doctest::Approx(c3.rhs).epsilon(1e-9));
    const InequalityReport v = check_inequality("cor3.eq29", pair, {0, 1, 1.0}, CheckConfig{});
    CHECK(c3.lhs == doctest::Approx(v.lhs).epsilon(1e-9));
    CHECK(c3.rhs == doctest::Approx(v.rhs).epsilon(1e-9));
}
