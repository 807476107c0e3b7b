#include "kstab/io.hpp"

#include <fstream>
#include <sstream>

#include "kstab/sampling.hpp"

namespace kstab {

namespace {

const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::MissingInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

Integer integer_from(const Json& j) {
  const Rational q = rational_from(j);
  if (q.get_den() != 1) throw Error(ErrorKind::InvalidInput, "expected an integer, got " + to_string(q));
  return q.get_num();
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "expected a list of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from(v));
  return out;
}

std::vector<std::string> monomial_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "a monomial is a list of symbol names");
  return j.get<std::vector<std::string>>();
}

}  // namespace

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::InvalidInput, "rationals are \"p/q\" strings or integers, got " + j.dump());
}

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Integer& z) { return to_string(z); }

Json to_json(const UniPoly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

Json tagged(const Rational& q, const std::string& route) { return {{"value", to_string(q)}, {"route", route}}; }

Point point_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "a point is a list of integers");
  Point p;
  for (const auto& v : j) p.push_back(integer_from(v));
  return p;
}

LatticePolytope polytope_from(const Json& j) {
  return guarded([&] {
    const Json& pts = j.is_object() ? at(j, "vertices") : j;
    if (!pts.is_array() || pts.empty()) throw Error(ErrorKind::InvalidInput, "polytope needs at least one vertex");
    std::vector<Point> points;
    for (const auto& v : pts) points.push_back(point_from(v));
    return LatticePolytope::from_points(static_cast<int>(points.front().size()), points);
  });
}

Json to_json(const LatticePolytope& p) {
  Json vs = Json::array();
  for (const auto& v : p.vertices()) {
    Json row = Json::array();
    for (const auto& c : v) row.push_back(to_string(c));
    vs.push_back(row);
  }
  return {{"vertices", vs}};
}

PLConvexFunction pl_function_from(const Json& j, int dim) {
  return guarded([&] {
    if (j.is_object() && j.contains("constant") && !j.contains("pieces")) {
      return PLConvexFunction::constant(dim, rational_from(j.at("constant")));
    }
    std::vector<AffinePiece> pieces;
    for (const auto& p : at(j, "pieces")) {
      AffinePiece a{rationals_from(at(p, "linear")), rational_from(at(p, "constant"))};
      if (static_cast<int>(a.linear.size()) != dim) {
        throw Error(ErrorKind::DimensionMismatch, "piece has the wrong number of slopes");
      }
      pieces.push_back(std::move(a));
    }
    return PLConvexFunction(pieces);
  });
}

MonomialFlagIdeal flag_ideal_from(const Json& j) {
  return guarded([&] {
    MonomialFlagIdeal ideal;
    for (const auto& g : at(j, "generators")) {
      const Integer t = g.contains("t_power") ? integer_from(g.at("t_power")) : Integer(0);
      if (t < 0) throw Error(ErrorKind::InvalidInput, "negative t power");
      ideal.generators.push_back({point_from(at(g, "exponent")), static_cast<unsigned>(t.get_ui())});
    }
    return ideal;
  });
}

ToricTestConfiguration test_configuration_from(const Json& j) {
  return guarded([&] {
    ToricPolarisedPair pair{polytope_from(at(j, "polytope")), std::nullopt};
    if (j.contains("twist_polytope") && !j.at("twist_polytope").is_null()) {
      pair.twist = polytope_from(j.at("twist_polytope"));
    }
    pair.validate();
    if (j.contains("flag_ideal")) {
      const MonomialFlagIdeal ideal = flag_ideal_from(j.at("flag_ideal"));
      ideal.validate(pair.n());
      const unsigned r = j.contains("r") ? static_cast<unsigned>(integer_from(j.at("r")).get_ui()) : 1u;
      return semiample_configuration(pair, ideal, r, std::max(24u, r));
    }
    const unsigned exponent = j.contains("exponent") ? static_cast<unsigned>(integer_from(j.at("exponent")).get_ui()) : 1u;
    if (exponent == 0) throw Error(ErrorKind::InvalidInput, "exponent must be positive");
    return make_test_configuration(pair, pl_function_from(at(j, "pl_function"), pair.n()), rational_from(at(j, "R")),
                                   exponent);
  });
}

IntersectionTable table_from(const Json& j) {
  return guarded([&] {
    const Integer d = integer_from(at(j, "ambient_degree"));
    if (d <= 0) throw Error(ErrorKind::InvalidInput, "ambient degree must be positive");
    IntersectionTable t(static_cast<unsigned>(d.get_ui()));
    for (const auto& e : at(j, "entries")) t.set(monomial_from(at(e, "monomial")), rational_from(at(e, "value")));
    return t;
  });
}

ClassExpr class_from(const Json& j) {
  return guarded([&] {
    if (j.is_string()) return ClassExpr::symbol(j.get<std::string>());
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "a class is a symbol or {symbol: coefficient}");
    ClassExpr c;
    for (const auto& [name, coef] : j.items()) c = c + ClassExpr::symbol(name) * MPoly(rational_from(coef));
    return c;
  });
}

ChernNumbers chern_from(const Json& j) {
  return guarded([&] {
    ChernNumbers c{static_cast<int>(integer_from(at(j, "n")).get_si()), rationals_from(at(j, "values"))};
    c.validate();
    return c;
  });
}

BaseConfiguration base_from(const Json& j) {
  return guarded([&] {
    BaseConfiguration b;
    b.b = static_cast<int>(integer_from(at(j, "b")).get_si());
    b.mu = rational_from(at(j, "mu"));
    b.Lnp1 = rational_from(at(j, "Lnp1"));
    b.LK = rational_from(at(j, "LK"));
    b.LT = j.contains("LT") ? rational_from(j.at("LT")) : Rational(0);
    return b;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingInput, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json report_header(const std::string& command) { return {{"schema_version", kSchemaVersion}, {"command", command}}; }

}  // namespace kstab
