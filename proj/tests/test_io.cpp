#include "kstab/invariants.hpp"
#include "kstab/io.hpp"
#include "kstab/pipeline.hpp"
#include "kstab/sampling.hpp"
#include "test_util.hpp"

using namespace kstab;
using namespace testutil;

TEST_CASE("rationals") {
  CHECK(rational_from(Json("-6/4")) == q(-3, 2));
  CHECK(rational_from(Json(7)) == 7);
  CHECK(to_json(q(6, -4)) == Json("-3/2"));
  for (const auto& bad : {Json("1/0"), Json("x"), Json(1.5), Json::array()}) {
    CHECK(kind_of([&] { rational_from(bad); }) == ErrorKind::InvalidInput);
  }
  SeededRng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Rational x = rng.rational(1000, 50);
    CHECK(rational_from(to_json(x)) == x);
  }
}

TEST_CASE("configurations") {
  const Json p1 = Json::parse(R"({
    "polytope": {"vertices": [[0], [2]]},
    "pl_function": {"pieces": [{"linear": ["0"], "constant": "0"}, {"linear": ["-1"], "constant": "1"}]},
    "R": "1"})");
  const auto tc = test_configuration_from(p1);
  CHECK(df_from_coefficients(hilbert_weight_data(tc)) == q(1, 4));
  CHECK(polytope_from(to_json(tc.pair.polytope)) == tc.pair.polytope);

  const Json flag = Json::parse(R"({
    "polytope": [[0, 0], [2, 0], [0, 2], [2, 2]],
    "flag_ideal": {"generators": [{"exponent": [1, 0], "t_power": 0}, {"exponent": [0, 0], "t_power": 1}]}})");
  const auto ftc = test_configuration_from(flag);
  CHECK(toric_df_report(ftc).routes_agree);

  SUBCASE("errors") {
    Json no_r = p1;
    no_r.erase("R");
    CHECK(kind_of([&] { test_configuration_from(no_r); }) == ErrorKind::MissingInput);
    Json wrong = p1;
    wrong["pl_function"]["pieces"][0]["linear"] = Json::array({"0", "1"});
    CHECK(kind_of([&] { test_configuration_from(wrong); }) == ErrorKind::DimensionMismatch);
    Json typed = p1;
    typed["polytope"] = Json::object({{"vertices", "nope"}});
    CHECK(kind_of([&] { test_configuration_from(typed); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { read_json_file("/nonexistent/x.json"); }) == ErrorKind::MissingInput);
  }
}

TEST_CASE("tables and classes") {
  const auto t = table_from(Json::parse(R"({"ambient_degree": 2,
    "entries": [{"monomial": ["A", "A"], "value": "1"}, {"monomial": ["B", "A"], "value": "1/2"},
                {"monomial": ["B", "B"], "value": 0}]})"));
  const ClassExpr c = class_from(Json::parse(R"({"A": 2, "B": "-1"})"));
  // (2A - B)^2 = 4 - 2 + 0
  CHECK(evaluate({c, c}, t).constant_term() == 2);
  CHECK(evaluate({class_from("A"), class_from("B")}, t).constant_term() == q(1, 2));
  CHECK(kind_of([] { chern_from(Json::parse(R"({"n": 2, "values": ["1"]})")); }) == ErrorKind::DimensionMismatch);
}
