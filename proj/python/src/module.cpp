#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kstab/error.hpp"
#include "kstab/fibration.hpp"
#include "kstab/intersect.hpp"
#include "kstab/invariants.hpp"
#include "kstab/io.hpp"
#include "kstab/kodaira.hpp"
#include "kstab/pipeline.hpp"

namespace py = pybind11;
using namespace kstab;

namespace {

// Rationals cross the boundary as fractions.Fraction; inputs may also be int or "p/q".
py::object frac(const Rational& q) { return py::module_::import("fractions").attr("Fraction")(to_string(q)); }

Rational rat(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

Json json_of(const py::handle& obj) {
  // Fractions are not JSON; stringify them first
  auto conv = py::module_::import("json").attr("dumps")(obj, py::arg("default") = py::module_::import("builtins").attr("str"));
  return Json::parse(conv.cast<std::string>());
}

py::list fracs(const std::vector<Rational>& v) {
  py::list out;
  for (const auto& q : v) out.append(frac(q));
  return out;
}

LatticePolytope polytope_of(const py::handle& vertices) { return polytope_from(json_of(vertices)); }

py::dict df_report(const py::dict& config) {
  const auto tc = test_configuration_from(json_of(config));
  const auto d = toric_df_report(tc);
  py::dict out;
  out["df"] = frac(d.df_coefficients);
  out["df_intersection"] = frac(d.df_intersection);
  py::dict norms;
  norms["intersection"] = frac(d.norm_intersection);
  norms["odaka"] = frac(d.norm_odaka);
  norms["b0"] = frac(d.norm_b0);
  out["minimum_norm"] = norms;
  out["routes_agree"] = d.routes_agree;
  out["trivial"] = d.trivial;
  out["verdict"] = to_string(d.verdict.kind);
  out["exponent"] = tc.exponent;
  py::dict h;
  h["a0"] = frac(d.hilbert.a0);
  h["a1"] = frac(d.hilbert.a1);
  h["b0"] = frac(d.hilbert.b0);
  h["b1"] = frac(d.hilbert.b1);
  h["a_q"] = frac(d.hilbert.a_q);
  h["b_q"] = frac(d.hilbert.b_q);
  out["hilbert"] = h;
  return out;
}

py::dict embed(const py::handle& vertices, unsigned k_cap) {
  const auto t = embedding_threshold(polytope_of(vertices), std::nullopt, k_cap);
  py::dict out;
  out["k_min"] = t.k_min;
  out["epsilon"] = frac(t.epsilon);
  out["k_hat_bound"] = t.k_hat_bound;
  out["nef_bound"] = t.nef_bound;
  return out;
}

py::dict family(int n, const py::list& values, unsigned m_cap, unsigned m_floor) {
  ChernNumbers c{n, {}};
  for (const auto& v : values) c.values.push_back(rat(v));
  const auto f = family_threshold(c, m_cap, m_floor);
  py::dict out;
  out["m_min"] = f.m_min;
  out["k_min"] = f.k_min;
  out["mu_numerator"] = fracs(f.num.coeffs());
  out["mu_denominator"] = fracs(f.den.coeffs());
  return out;
}

py::dict fibration(int n, const py::handle& V, const py::handle& KF, const py::dict& base_config) {
  const auto base = toric_base(test_configuration_from(json_of(base_config)));
  const auto e = df_m_expansion(split_fibration(n, base, rat(V), rat(KF)), base);
  py::dict out;
  out["df_times_m"] = fracs(e.times_m.coeffs());
  out["coeff_b_plus_1"] = frac(e.coeff_b_plus_1);
  out["coeff_b"] = frac(e.coeff_b);
  out["expected"] = frac(e.expected);
  out["base_df"] = frac(e.base_df);
  out["consistent"] = e.consistent;
  return out;
}

}  // namespace

PYBIND11_MODULE(_kstab, m) {
  m.doc() = "exact K-stability computations for toric test configurations";
  py::register_exception<Error>(m, "KStabError", PyExc_ValueError);

  m.def("ehrhart", [](const py::handle& v) { return fracs(ehrhart(polytope_of(v)).coeffs()); }, py::arg("vertices"),
        "Ehrhart polynomial coefficients, constant term first.");
  m.def("volume", [](const py::handle& v) { return frac(volume(polytope_of(v))); }, py::arg("vertices"));
  m.def("df", &df_report, py::arg("config"),
        "DF by the coefficient and intersection routes, all minimum norms and the verdict.");
  m.def("minimum_norm",
        [](const py::dict& config, const std::string& route) {
          return frac(toric_norm(test_configuration_from(json_of(config)), parse_norm_route(route)));
        },
        py::arg("config"), py::arg("route") = "intersection");
  m.def("twisted_slope",
        [](const py::handle& KdotL, const py::handle& TdotL, const py::handle& Ln, int n) {
          return frac(twisted_slope({rat(KdotL), rat(TdotL), rat(Ln), n}));
        },
        py::arg("KdotL"), py::arg("TdotL"), py::arg("Ln"), py::arg("n"));
  m.def("j_functional",
        [](const py::handle& gamma, const py::handle& Lnp1, const py::handle& LT, int n) {
          return frac(j_functional(rat(gamma), rat(Lnp1), rat(LT), n));
        },
        py::arg("gamma"), py::arg("Lnp1"), py::arg("LT"), py::arg("n"));
  m.def("verify_odaka_identity", [](int n) { return verify_odaka_identity(n).holds; }, py::arg("n"));
  m.def("delta", [](int n, int b, const py::handle& V) { return frac(delta(n, b, rat(V))); }, py::arg("n"),
        py::arg("b"), py::arg("V"));
  m.def("cm_degree",
        [](int n, const py::handle& mu, const py::handle& A, const py::handle& B) {
          return frac(cm_degree(n, rat(mu), rat(A), rat(B)));
        },
        py::arg("n"), py::arg("mu_fibre"), py::arg("A"), py::arg("B"));
  m.def("fibration_expand", &fibration, py::arg("n"), py::arg("V"), py::arg("KF"), py::arg("base_config"));
  m.def("embedding_threshold", &embed, py::arg("vertices"), py::arg("k_cap") = 1000u);
  m.def("family_threshold", &family, py::arg("n"), py::arg("values"), py::arg("m_cap"), py::arg("m_floor"));
}
