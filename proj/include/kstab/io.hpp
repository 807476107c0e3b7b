#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kstab/error.hpp"
#include "kstab/fibration.hpp"
#include "kstab/intersect.hpp"
#include "kstab/kodaira.hpp"
#include "kstab/torictc.hpp"

namespace kstab {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Rationals travel as "p/q" strings; bare JSON integers are accepted on input.
Rational rational_from(const Json& j);
Json to_json(const Rational& q);
Json to_json(const Integer& z);
/// Coefficients, constant term first.
Json to_json(const UniPoly& p);
/// {"value": ..., "route": ...}
Json tagged(const Rational& q, const std::string& route);

Point point_from(const Json& j);
/// {"vertices": [[..], ..]} or a bare list of points.
LatticePolytope polytope_from(const Json& j);
Json to_json(const LatticePolytope& p);
/// {"pieces": [{"linear": [..], "constant": ..}]} or {"constant": c}.
PLConvexFunction pl_function_from(const Json& j, int dim);
/// {"generators": [{"exponent": [..], "t_power": j}]}
MonomialFlagIdeal flag_ideal_from(const Json& j);
/// {"polytope", "twist_polytope"?, "pl_function", "R", "exponent"?} or, with a
/// flag ideal, {"polytope", "twist_polytope"?, "flag_ideal", "r"?}: the least
/// semi-ample r >= the given one is used.
ToricTestConfiguration test_configuration_from(const Json& j);
/// {"ambient_degree": d, "entries": [{"monomial": [..], "value": ..}]}
IntersectionTable table_from(const Json& j);
/// A symbol name, or {"symbol": coefficient, ..}.
ClassExpr class_from(const Json& j);
/// {"n": n, "values": [..]}
ChernNumbers chern_from(const Json& j);
/// {"b", "mu", "Lnp1", "LK", "LT"?}
BaseConfiguration base_from(const Json& j);

/// MissingInput when the file cannot be read, InvalidInput on bad JSON.
Json read_json_file(const std::string& path);
/// Pretty-printed with sorted keys and a trailing newline.
std::string dump(const Json& j);

/// Report skeleton carrying the schema version and the command.
Json report_header(const std::string& command);

/// Runs fn, turning nlohmann exceptions (bad types, missing keys) into
/// InvalidInput so that callers only see kstab::Error.
template <class F>
auto guarded(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
}

}  // namespace kstab
