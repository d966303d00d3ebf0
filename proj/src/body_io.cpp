#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quermass/body_io.hpp"

namespace quermass {

namespace {

Polytope body_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices")) {
        throw GeometryError(ErrorKind::ParseError, "body needs \"dim\" and \"vertices\"");
    }
    const int dim = j.at("dim").get<int>();
    if (dim != 2 && dim != 3) throw GeometryError(ErrorKind::DimensionMismatch, "body dimension must be 2 or 3");
    std::vector<Vec> pts;
    for (const auto& row : j.at("vertices")) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            throw GeometryError(ErrorKind::DimensionMismatch, "vertex length does not match dim");
        }
        Vec v{};
        for (int k = 0; k < dim; ++k) v[k] = row[k].get<double>();
        pts.push_back(v);
    }
    if (pts.empty()) throw GeometryError(ErrorKind::ParseError, "body has no vertices");
    Polytope body = convex_hull(pts, dim, {.allow_degenerate = true});
    // Every listed point must be (close to) a hull vertex.
    const double tol = kMergeRelTol * std::max(body.extent(), 1.0);
    for (const Vec& p : pts) {
        const bool hit = std::any_of(body.vertices().begin(), body.vertices().end(),
                                     [&](const Vec& v) { return norm(v - p) <= tol; });
        if (!hit) throw GeometryError(ErrorKind::ParseError, "vertex list contains non-extreme points");
    }
    return body;
}

}  // namespace

Polytope body_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw GeometryError(ErrorKind::ParseError, e.what());
    }
    try {
        return body_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw GeometryError(ErrorKind::ParseError, e.what());
    }
}

std::string body_to_json_text(const Polytope& body) {
    nlohmann::ordered_json j;
    j["dim"] = body.dim();
    j["vertices"] = nlohmann::ordered_json::array();
    for (const Vec& v : body.vertices()) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < body.dim(); ++k) row.push_back(v[k]);
        j["vertices"].push_back(row);
    }
    return j.dump(2);
}

Polytope read_body(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GeometryError(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return body_from_json_text(ss.str());
}

void write_body(const std::string& path, const Polytope& body) {
    std::ofstream out(path);
    if (!out) throw GeometryError(ErrorKind::ParseError, "cannot write " + path);
    out << body_to_json_text(body) << '\n';
}

}  // namespace quermass
