#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hyperturan/core.hpp"
#include "hyperturan/rational.hpp"
#include "hyperturan/region.hpp"

namespace hyperturan {

using Json = nlohmann::json;

/// Sorted keys, no whitespace, floats as %.17g.
std::string canonical_dump(const Json& j);

Json to_json(const Hypergraph& h);
Json to_json(const PartialHypergraph& f);
Json to_json(const FeasiblePoint& x);

/// Throws std::invalid_argument on malformed input.
Hypergraph hypergraph_from_json(const Json& j);
PartialHypergraph partial_from_json(const Json& j);
FeasiblePoint point_from_json(const Json& j, double tol = kFeasibilityTol);

Json read_json_file(const std::string& path);

Json rationals_to_json(const std::vector<Rational>& xs);
std::vector<Rational> rationals_from_json(const Json& j);

}  // namespace hyperturan
