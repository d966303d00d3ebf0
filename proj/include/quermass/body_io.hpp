#pragma once

#include <string>

#include "quermass/polytope.hpp"

namespace quermass {

// Body files hold {"dim": n, "vertices": [[x, y(, z)], ...]}. Reading
// re-hulls the input; a vertex list that moves by more than the merge
// threshold under re-hulling is rejected. Degenerate bodies are accepted.
Polytope body_from_json_text(const std::string& text);
std::string body_to_json_text(const Polytope& body);

Polytope read_body(const std::string& path);
void write_body(const std::string& path, const Polytope& body);

}  // namespace quermass
