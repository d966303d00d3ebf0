#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quermass/body_io.hpp"
#include "quermass/functionals.hpp"
#include "quermass/projection.hpp"
#include "quermass/suite.hpp"

namespace py = pybind11;
using namespace quermass;

namespace {

Vec to_vec(const std::vector<double>& v) {
    if (v.size() < 2 || v.size() > 3) throw py::value_error("points need 2 or 3 coordinates");
    Vec out{};
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
    return out;
}

std::vector<double> from_vec(const Vec& v, int dim) { return std::vector<double>(v.begin(), v.begin() + dim); }

Polytope hull(const std::vector<std::vector<double>>& points, bool allow_degenerate) {
    if (points.empty()) throw py::value_error("no points");
    const int dim = static_cast<int>(points[0].size());
    std::vector<Vec> pts;
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != dim) throw py::value_error("points differ in dimension");
        pts.push_back(to_vec(p));
    }
    return convex_hull(pts, dim, {.allow_degenerate = allow_degenerate});
}

py::dict report_dict(const InequalityReport& r) {
    py::dict d;
    d["inequality_id"] = r.inequality_id;
    d["dim"] = r.dim;
    d["i"] = r.params.i;
    d["j"] = r.params.j;
    d["p"] = r.params.p;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["slack"] = r.slack;
    d["rel_slack"] = r.rel_slack;
    d["tolerance"] = r.tolerance;
    d["verdict"] = to_string(r.verdict);
    d["asserted"] = r.asserted;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quermassintegrals, Firey combinations, projection bodies and their inequalities";
    m.attr("__version__") = kToolVersion;

    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);

    py::class_<Polytope>(m, "Polytope")
        .def_property_readonly("dim", &Polytope::dim)
        .def_property_readonly("vertices",
                               [](const Polytope& p) {
                                   std::vector<std::vector<double>> out;
                                   for (const Vec& v : p.vertices()) out.push_back(from_vec(v, p.dim()));
                                   return out;
                               })
        .def_property_readonly("volume", &Polytope::volume)
        .def_property_readonly("centroid", [](const Polytope& p) { return from_vec(p.centroid(), p.dim()); })
        .def_property_readonly("degenerate", &Polytope::degenerate)
        .def_property_readonly("facet_count", [](const Polytope& p) { return p.facets().size(); })
        .def("support", [](const Polytope& p, const std::vector<double>& u) { return support(p, to_vec(u)); })
        .def("to_json", &body_to_json_text)
        .def("__len__", &Polytope::size)
        .def("__repr__", [](const Polytope& p) {
            return "<Polytope dim=" + std::to_string(p.dim()) + " vertices=" + std::to_string(p.size()) + ">";
        });

    m.def("convex_hull", &hull, py::arg("points"), py::arg("allow_degenerate") = false);
    m.def("from_json", &body_from_json_text, py::arg("text"));
    m.def("box", [](const std::vector<double>& lo, const std::vector<double>& hi) {
        if (lo.size() != hi.size()) throw py::value_error("corners differ in dimension");
        return box(to_vec(lo), to_vec(hi), static_cast<int>(lo.size()));
    });
    m.def("minkowski_sum", py::overload_cast<const Polytope&, const Polytope&>(&minkowski_sum));
    m.def("quermassintegral", &quermassintegral, py::arg("body"), py::arg("i"));
    m.def("mixed_volume", [](const std::vector<Polytope>& bodies) { return mixed_volume(std::span<const Polytope>(bodies)); },
          py::arg("bodies"));
    m.def("mixed_quermassintegral", [](const Polytope& K, const Polytope& L, int i, int level) {
        const Bracketed b = mixed_quermassintegral(K, L, i, level);
        return py::make_tuple(b.value, b.half_width);
    }, py::arg("K"), py::arg("L"), py::arg("i"), py::arg("level") = 3);
    m.def("mixed_p_quermassintegral", &mixed_p_quermassintegral, py::arg("K"), py::arg("L"), py::arg("i"), py::arg("p"),
          py::arg("level") = 3);
    m.def("quermass_difference", &quermass_difference, py::arg("K"), py::arg("D"), py::arg("i"));
    m.def("steiner_fit", [](const Polytope& K, int level) {
        const QuermassVector q = steiner_fit(K, level);
        return py::make_tuple(q.values, q.half_widths);
    }, py::arg("body"), py::arg("level") = 3);
    m.def("projection_support", [](const std::vector<const Polytope*>& slots, const std::vector<double>& u) {
        if (slots.empty() || !slots[0]) throw py::value_error("need at least one body");
        return projection_support(slots, slots[0]->dim(), normalized(to_vec(u)));
    }, py::arg("slots"), py::arg("u"));
    m.def("projection_body", py::overload_cast<const Polytope&, int>(&projection_body), py::arg("body"),
          py::arg("level") = 3);
    m.def("mixed_projection", &mixed_projection, py::arg("K"), py::arg("L"), py::arg("j"), py::arg("level") = 3);
    m.def("random_body", [](std::uint64_t seed, int dim, int kind) {
        if (kind < 0 || kind > 2) throw py::value_error("kind must be 0, 1 or 2");
        return random_body(seed, dim, static_cast<BodyKind>(kind));
    }, py::arg("seed"), py::arg("dim"), py::arg("kind") = 0);

    m.def("inequality_ids", &inequality_ids);
    m.def("check_trial", [](const std::string& id, std::uint64_t seed, int dim, int trial, int i, int j, double p) {
        return report_dict(check_inequality(id, make_trial_instance(seed, dim, trial), {i, j, p}, {}));
    }, py::arg("id"), py::arg("seed"), py::arg("dim"), py::arg("trial"), py::arg("i") = 0, py::arg("j") = 0,
          py::arg("p") = 1.0);
    m.def("bellman_check", [](const std::vector<double>& a, const std::vector<double>& b, double p) {
        return bellman_check(a, b, p);
    });
    m.def("scalar_lemma4_check", &scalar_lemma4_check);
    m.def("conjecture_search", [](const std::string& problem, int r, long trials, std::uint64_t seed, bool random_nest) {
        SearchConfig c;
        c.nest = random_nest ? NestMode::Random : NestMode::Homothetic;
        const SearchReport s = conjecture_search(problem, 3, r, trials, seed, c);
        py::dict d;
        d["problem_id"] = s.problem_id;
        d["r"] = s.r;
        d["trials"] = s.trials;
        d["min_rel_slack"] = s.min_rel_slack;
        d["worst_trial"] = s.worst_trial;
        d["violation_candidate"] = s.violation_candidate;
        d["worst_instance"] = s.worst_instance;
        return d;
    }, py::arg("problem"), py::arg("r"), py::arg("trials"), py::arg("seed") = 42, py::arg("random_nest") = false);
    m.def("evaluate_search_instance", [](const std::string& text, int grid_level) {
        const SearchEvaluation e = evaluate_search_instance(text, grid_level);
        return py::make_tuple(e.lhs, e.rhs, e.rel_slack);
    }, py::arg("instance_json"), py::arg("grid_level") = 3);
}
