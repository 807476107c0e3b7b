// kstab: JSON in, JSON report out. Exit codes 0 ok, 1 verification failure,
// 2 input error, 3 inconclusive.
#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "kstab/fibration.hpp"
#include "kstab/intersect.hpp"
#include "kstab/invariants.hpp"
#include "kstab/io.hpp"
#include "kstab/kodaira.hpp"
#include "kstab/pipeline.hpp"
#include "kstab/sampling.hpp"
#include "kstab/toric_intersect.hpp"

using namespace kstab;

namespace {

struct Outcome {
  Json report;
  int status = 0;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Inconclusive:
    case ErrorKind::NefCertificateUnavailable:
    case ErrorKind::NoThresholdBelowCap:
      return 3;
    case ErrorKind::InconsistentSamples:
    case ErrorKind::LeadingTermNonzero:
    case ErrorKind::DegreeOverflow:
      return 1;
    default:
      return 2;
  }
}

Json verdict_json(const Verdict& v) {
  Json j{{"kind", to_string(v.kind)}, {"violation", to_string(v.violation)}};
  if (v.index) j["index"] = *v.index;
  return j;
}

Json hilbert_json(const HilbertWeightData& d) {
  const std::string r = "hilbert-fit";
  return {{"a0", tagged(d.a0, r)}, {"a1", tagged(d.a1, r)}, {"b0", tagged(d.b0, r)},
          {"b1", tagged(d.b1, r)}, {"a_q", tagged(d.a_q, r)}, {"b_q", tagged(d.b_q, r)}};
}

Json poly_json(const UniPoly& p, const std::string& var, const std::string& route) {
  return {{"coefficients", to_json(p)}, {"display", p.to_string(var)}, {"route", route}};
}

Json configuration_summary(const ToricTestConfiguration& tc) {
  Json pieces = Json::array();
  for (const auto& p : tc.f.pieces()) {
    Json lin = Json::array();
    for (const auto& c : p.linear) lin.push_back(to_string(c));
    pieces.push_back({{"linear", lin}, {"constant", to_string(p.constant)}});
  }
  Json j{{"n", tc.n()}, {"exponent", tc.exponent}, {"R", to_string(tc.R)}, {"pieces", pieces},
         {"polytope", to_json(tc.pair.polytope)}};
  if (tc.pair.twist) j["twist_polytope"] = to_json(*tc.pair.twist);
  return j;
}

Outcome cmd_ehrhart(const std::string& path) {
  const Json in = read_json_file(path);
  const auto p = polytope_from(in.is_object() && in.contains("polytope") ? in.at("polytope") : in);
  Json counts = Json::array();
  for (int r = 0; r <= 4; ++r) counts.push_back(to_string(lattice_count(p, r)));
  Json j{{"ehrhart", poly_json(ehrhart(p), "r", "lattice-fit")},
         {"lattice_counts", {{"r", "0..4"}, {"values", counts}, {"route", "enumeration"}}},
         {"dim", p.dim()}};
  if (p.full_dimensional()) j["volume"] = tagged(volume(p), "triangulation");
  j["relative_lattice_volume"] = tagged(relative_lattice_volume(p), "ehrhart-leading");
  return {j, 0};
}

Outcome cmd_df_toric(const std::string& path) {
  const auto tc = test_configuration_from(read_json_file(path));
  const auto d = toric_df_report(tc);
  Json j{{"configuration", configuration_summary(tc)},
         {"hilbert", hilbert_json(d.hilbert)},
         {"intersections",
          {{"mu", tagged(d.inputs.mu, "facets")},
           {"Lnp1", tagged(d.inputs.Lnp1, "mixed-volume")},
           {"LK", tagged(d.inputs.LK, "facets")},
           {"LT", tagged(d.inputs.LT, "mixed-volume")}}},
         {"df", tagged(d.df_coefficients, "coefficients")},
         {"df_intersection", tagged(d.df_intersection, "intersection")},
         {"df_route_factor", to_string(df_route_factor(tc.n()))},
         {"minimum_norm",
          {{"intersection", tagged(d.norm_intersection, "intersection")},
           {"odaka", tagged(d.norm_odaka, "odaka")},
           {"b0", tagged(d.norm_b0, "b0")}}},
         {"routes_agree", d.routes_agree},
         {"trivial", d.trivial},
         {"verdict", verdict_json(d.verdict)}};
  return {j, d.routes_agree ? 0 : 1};
}

Outcome cmd_df_table(const std::string& path) {
  const Json in = read_json_file(path);
  return guarded([&] {
    const int n = in.at("n").get<int>();
    const auto table = table_from(in.at("table"));
    const ClassExpr Lc = class_from(in.at("Lc")), K = class_from(in.at("K"));
    Rational mu;
    std::string mu_route;
    if (in.contains("mu")) {
      mu = rational_from(in.at("mu"));
      mu_route = "input";
    } else {
      const Json& s = in.at("slope");
      TwistInput t{rational_from(s.at("KdotL")), s.contains("TdotL") ? rational_from(s.at("TdotL")) : Rational(0),
                   rational_from(s.at("Ln")), n};
      mu = twisted_slope(t);
      mu_route = "twisted-slope";
    }
    const Rational Lnp1 = evaluate(std::vector<ClassExpr>(n + 1, Lc), table).constant_term();
    const Rational LK = evaluate(power_then(Lc, n, {K}), table).constant_term();
    const Rational LT = in.contains("T") ? evaluate(power_then(Lc, n, {class_from(in.at("T"))}), table).constant_term()
                                         : Rational(0);
    const Rational df = df_from_intersections(mu, Lnp1, LK, LT, n);
    Json j{{"mu", tagged(mu, mu_route)},
           {"Lnp1", tagged(Lnp1, "table")},
           {"LK", tagged(LK, "table")},
           {"LT", tagged(LT, "table")},
           {"df", tagged(df, "intersection")},
           {"df_coefficient_normalization", tagged(df / df_route_factor(n), "intersection/route-factor")}};
    return Outcome{j, 0};
  });
}

Outcome cmd_norm(const std::string& path, const std::string& route) {
  const auto tc = test_configuration_from(read_json_file(path));
  Json norms = Json::object();
  std::vector<Rational> values;
  for (NormRoute r : {NormRoute::Intersection, NormRoute::Odaka, NormRoute::B0}) {
    if (route != "all" && parse_norm_route(route) != r) continue;
    values.push_back(toric_norm(tc, r));
    norms[to_string(r)] = tagged(values.back(), to_string(r));
  }
  if (route != "all" && values.empty()) parse_norm_route(route);
  bool agree = true;
  for (const auto& v : values) agree = agree && v == values.front();
  return {{{"minimum_norm", norms}, {"routes_agree", agree}}, agree ? 0 : 1};
}

Outcome cmd_jtest(const std::string& path) {
  const Json in = read_json_file(path);
  if (in.contains("polytope")) {
    const auto tc = test_configuration_from(in);
    const auto t = toric_df_inputs(tc);
    const Rational gamma = t.TLn1 / t.Ln;
    const Rational j = j_functional(gamma, t.Lnp1, t.LT, tc.n());
    const auto [jk, rel] = toric_j_and_relative_canonical(tc);
    const auto dec = j_df_decomposition(jk, rel, true);
    Json out{{"gamma", tagged(gamma, "toric")},
             {"J", tagged(j, "toric")},
             {"J_positive", j > 0},
             {"decomposition",
              {{"J_K_plus_kT", tagged(jk, "toric")},
               {"relative_canonical", tagged(rel, "toric")},
               {"df", tagged(dec.df, "j-plus-relative")}}}};
    if (dec.warning) out["decomposition"]["warning"] = *dec.warning;
    return {out, 0};
  }
  return guarded([&] {
    const int n = in.at("n").get<int>();
    const Rational gamma = in.contains("gamma") ? rational_from(in.at("gamma"))
                                                : rational_from(in.at("TdotL")) / rational_from(in.at("Ln"));
    const Rational j = j_functional(gamma, rational_from(in.at("Lnp1")), rational_from(in.at("LT")), n);
    return Outcome{{{"gamma", tagged(gamma, "input")}, {"J", tagged(j, "formula")}, {"J_positive", j > 0}}, 0};
  });
}

Outcome cmd_chow(const std::string& path, unsigned r) {
  const auto tc = test_configuration_from(read_json_file(path));
  const unsigned n = static_cast<unsigned>(tc.n());
  const BiPoly w = bivariate_weight_oracle(tc, 2 * n + 2, 2 * (n + 2));
  const UniPoly hhat = ehrhart(tc.working_polytope());
  const UniPoly c = chow_weight(w, hhat, Rational(r));
  Json terms = Json::array();
  for (const auto& [key, v] : w.terms()) terms.push_back({{"r", key.first}, {"k", key.second}, {"coeff", to_string(v)}});
  return {{{"r", r},
           {"wtilde", {{"terms", terms}, {"route", "bivariate-lattice-count"}}},
           {"chow_weight", poly_json(c, "k", "bivariate-lattice-count")},
           {"df", tagged(df_from_coefficients(hilbert_weight_data(tc)), "coefficients")}},
          0};
}

Outcome cmd_fibration(const std::string& path) {
  const Json in = read_json_file(path);
  return guarded([&] {
    const int n = in.at("n").get<int>();
    const Rational V = rational_from(in.at("V")), KF = rational_from(in.at("KF"));
    const BaseConfiguration base =
        in.contains("base_tc") ? toric_base(test_configuration_from(in.at("base_tc"))) : base_from(in.at("base"));
    FibrationData data;
    if (in.contains("table")) {
      // a declared total space instead of the split product
      data.n = n;
      data.b = base.b;
      data.V = V;
      data.mu_fibre = in.contains("mu_fibre") ? rational_from(in.at("mu_fibre")) : -KF / V;
      data.table = table_from(in.at("table"));
      data.LU = class_from(in.value("LU", Json("LU")));
      data.LB = class_from(in.value("LB", Json("LB")));
      data.K = class_from(in.value("K", Json("K")));
    } else {
      data = split_fibration(n, base, V, KF);
    }
    const auto e = df_m_expansion(data, base);
    const auto s = slope_expansion(n, base.b, data.mu_fibre, base.mu);
    Json coeffs = Json::object();
    for (int p = -1; p <= base.b; ++p) coeffs["m^" + std::to_string(p)] = to_string(e.coeff(p));
    Json out{{"delta", tagged(delta(n, base.b, V), "formula")},
             {"lambda0", tagged(s.lambda0, "slope-expansion")},
             {"lambda1", tagged(s.lambda1, "slope-expansion")},
             {"df_times_m", poly_json(e.times_m, "m", "split-table")},
             {"df_coefficients", coeffs},
             {"coeff_b_plus_1", tagged(e.coeff_b_plus_1, "split-table")},
             {"coeff_b", tagged(e.coeff_b, "split-table")},
             {"expected_coeff_b", tagged(e.expected, "V*binom(n,b)*base_df")},
             {"base_df", tagged(e.base_df, "intersection")},
             {"consistent", e.consistent}};
    if (e.coeff_b < 0) out["unstable_from_m"] = to_string(propagate_instability(e));
    return Outcome{out, e.consistent ? 0 : 1};
  });
}

Outcome cmd_cm_degree(const std::string& path) {
  const Json in = read_json_file(path);
  return guarded([&] {
    const Rational c = cm_degree(in.at("n").get<int>(), rational_from(in.at("mu_fibre")), rational_from(in.at("A")),
                                 rational_from(in.at("B")));
    return Outcome{{{"cm_degree", tagged(c, "formula")}}, 0};
  });
}

Json class_json(const ClassVector& v) {
  Json j = Json::array();
  for (const auto& c : v) j.push_back(to_string(c));
  return j;
}

ClassVector class_vector_from(const Json& j) {
  ClassVector v;
  for (const auto& c : j) v.push_back(rational_from(c));
  return v;
}

Outcome cmd_kodaira_embed(const std::string& path) {
  const Json in = read_json_file(path);
  return guarded([&] {
    const unsigned cap = in.contains("k_cap") ? in.at("k_cap").get<unsigned>() : 1000u;
    EmbeddingThreshold t;
    if (in.contains("polytope")) {
      const auto p = polytope_from(in.at("polytope"));
      std::optional<NefOracle> oracle;
      if (in.contains("nef_polytopes")) {
        oracle = NefOracle::toric(p);
        for (const auto& [name, q] : in.at("nef_polytopes").items()) oracle->add_polytope(name, polytope_from(q));
      }
      t = embedding_threshold(p, oracle, cap);
    } else {
      const auto L = class_vector_from(in.at("L"));
      std::vector<ClassVector> rel;
      if (in.contains("relations")) {
        for (const auto& r : in.at("relations")) rel.push_back(class_vector_from(r));
      }
      NefOracle o(L.size(), rel);
      for (const auto& [name, g] : in.at("generators").items()) o.add_generator(name, class_vector_from(g));
      t = embedding_threshold(in.at("n").get<int>(), rational_from(in.at("mu")), L, class_vector_from(in.at("K")), o,
                              cap);
    }
    Json cert = Json::array();
    for (const auto& [name, c] : t.certificate.combination) cert.push_back({{"generator", name}, {"coeff", to_string(c)}});
    return Outcome{{{"k_min", {{"value", t.k_min}, {"route", "proof-backed bound"}}},
                    {"epsilon", tagged(t.epsilon, "proof constant")},
                    {"k_hat_bound", t.k_hat_bound},
                    {"nef_bound", t.nef_bound},
                    {"candidate", class_json(t.candidate)},
                    {"certificate", cert}},
                   0};
  });
}

Outcome cmd_kodaira_family(const std::string& path, unsigned floor, unsigned cap) {
  const auto c = chern_from(read_json_file(path));
  const auto f = family_threshold(c, cap, floor);
  Json ks = Json::array();
  for (const auto& [m, k] : f.k_min) ks.push_back({{"m", m}, {"k_min", k}});
  return {{{"mu_numerator", poly_json(f.num, "m", "binomial-expansion")},
           {"mu_denominator", poly_json(f.den, "m", "binomial-expansion")},
           {"m_min", {{"value", f.m_min}, {"route", "proof-backed bound"}}},
           {"very_ample_floor", floor},
           {"k_min", ks}},
          0};
}

Outcome cmd_verify_identities(int n_max) {
  Json rows = Json::array();
  bool ok = true;
  for (int n = 1; n <= n_max; ++n) {
    const auto r = verify_odaka_identity(n);
    ok = ok && r.holds;
    Json row{{"n", n}, {"holds", r.holds}, {"route", "symbolic"}};
    if (!r.holds) row["discrepancy"] = r.discrepancy;
    rows.push_back(row);
  }
  return {{{"identities", rows}, {"all_hold", ok}}, ok ? 0 : 1};
}

Outcome cmd_verify_inequalities(int trials, std::uint64_t seed) {
  SeededRng rng(seed);
  Json suites = Json::array();
  bool ok = true;
  const std::vector<std::pair<std::string, LatticePolytope>> square_nef{
      {"H1", product(segment(0, 1), single_point({Integer(0)}))}, {"H2", product(single_point({Integer(0)}), segment(0, 1))}};
  for (int which = 0; which < 2; ++which) {
    const int n = which == 0 ? 1 : 2;
    const ToricPolarisedPair pair{which == 0 ? segment(0, 4) : product(segment(0, 2), segment(0, 2)), std::nullopt};
    int checked = 0, failed = 0, skipped = 0;
    Json failures = Json::array();
    for (int t = 0; t < trials; ++t) {
      const auto ideal = random_flag_ideal(rng, n, which == 0 ? 3 : 2, 3, 3);
      ToricTestConfiguration tc;
      try {
        tc = semiample_configuration(pair, ideal);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotSemiample) throw;
        ++skipped;
        continue;
      }
      const auto rep = toric_inequalities(tc, which == 0 ? std::vector<std::pair<std::string, LatticePolytope>>{}
                                                         : square_nef);
      if (!rep.hypotheses_hold()) {
        ++skipped;
        continue;
      }
      ++checked;
      if (!rep.all_hold()) {
        ++failed;
        Json items = Json::array();
        for (const auto& i : rep.items) items.push_back({{"name", i.name}, {"value", to_string(i.value)}, {"holds", i.holds}});
        failures.push_back({{"trial", t}, {"items", items}});
      }
    }
    ok = ok && failed == 0;
    suites.push_back({{"polytope", which == 0 ? "[0,4]" : "2x2 square"},
                      {"checked", checked},
                      {"failed", failed},
                      {"skipped", skipped},
                      {"failures", failures}});
  }
  return {{{"suites", suites}, {"all_hold", ok}, {"trials", trials}}, ok ? 0 : 1};
}

Outcome cmd_sweep(const std::string& path, const std::vector<std::string>& direction,
                  const std::vector<std::string>& range) {
  const auto tc = test_configuration_from(read_json_file(path));
  const Rational da = parse_rational(direction.at(0)), db = parse_rational(direction.at(1));
  const Rational lo = parse_rational(range.at(0)), hi = parse_rational(range.at(1)), step = parse_rational(range.at(2));
  if (step <= 0 || hi < lo) throw Error(ErrorKind::InvalidInput, "range is start stop step with step > 0");
  std::vector<Rational> ts;
  for (Rational t = lo; t <= hi && ts.size() < 10000; t += step) ts.push_back(t);
  const auto rows = twist_sweep(hilbert_weight_data(tc), da, db, ts);
  Json out = Json::array();
  Json changes = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.push_back({{"t", to_string(rows[i].first)}, {"df", tagged(rows[i].second, "coefficients")}});
    if (i > 0 && sign(rows[i].second) != sign(rows[i - 1].second)) {
      changes.push_back({to_string(rows[i - 1].first), to_string(rows[i].first)});
    }
  }
  return {{{"sweep", out}, {"sign_changes", changes}}, 0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact K-stability computations for toric test configurations"};
  app.require_subcommand(1);
  std::string output;
  std::uint64_t seed = 20240601;
  app.add_option("-o,--output", output, "write the report here instead of stdout");
  app.add_option("--seed", seed, "seed for randomized suites (recorded in every report)");

  std::string command;
  std::vector<std::string> inputs;
  std::function<Outcome()> action;
  auto bind = [&](CLI::App* sub, const std::string& name, std::function<Outcome()> fn) {
    sub->callback([&, name, fn] {
      command = name;
      action = fn;
    });
  };

  std::string in_path;
  auto* eh = app.add_subcommand("ehrhart", "Ehrhart polynomial of a lattice polytope");
  eh->add_option("input", in_path)->required();
  bind(eh, "ehrhart", [&] { return cmd_ehrhart(in_path); });

  auto* df = app.add_subcommand("df", "Donaldson-Futaki invariant");
  df->require_subcommand(1);
  auto* dft = df->add_subcommand("toric", "from a toric test configuration");
  dft->add_option("input", in_path)->required();
  bind(dft, "df toric", [&] { return cmd_df_toric(in_path); });
  auto* dfi = df->add_subcommand("table", "from an intersection table");
  dfi->add_option("input", in_path)->required();
  bind(dfi, "df table", [&] { return cmd_df_table(in_path); });

  std::string route = "all";
  auto* nm = app.add_subcommand("norm", "minimum norm");
  nm->add_option("input", in_path)->required();
  nm->add_option("--route", route)->check(CLI::IsMember({"intersection", "odaka", "b0", "all"}));
  bind(nm, "norm", [&] { return cmd_norm(in_path, route); });

  auto* jt = app.add_subcommand("jtest", "J-functional");
  jt->add_option("input", in_path)->required();
  bind(jt, "jtest", [&] { return cmd_jtest(in_path); });

  unsigned chow_r = 10;
  auto* cw = app.add_subcommand("chow-weight", "normalized Chow weight at fixed r");
  cw->add_option("input", in_path)->required();
  cw->add_option("--r", chow_r)->required();
  bind(cw, "chow-weight", [&] { return cmd_chow(in_path, chow_r); });

  auto* fb = app.add_subcommand("fibration", "fibrations");
  fb->require_subcommand(1);
  auto* fbe = fb->add_subcommand("expand", "DF of L_U + m L_B as a function of m");
  fbe->add_option("input", in_path)->required();
  bind(fbe, "fibration expand", [&] { return cmd_fibration(in_path); });

  auto* cm = app.add_subcommand("cm-degree", "degree of the CM line over a curve");
  cm->add_option("input", in_path)->required();
  bind(cm, "cm-degree", [&] { return cmd_cm_degree(in_path); });

  unsigned floor = 1, cap = 200;
  auto* kd = app.add_subcommand("kodaira", "embedding thresholds");
  kd->require_subcommand(1);
  auto* kde = kd->add_subcommand("embed", "k for a uniformly K-stable Kodaira embedding");
  kde->add_option("input", in_path)->required();
  bind(kde, "kodaira embed", [&] { return cmd_kodaira_embed(in_path); });
  auto* kdf = kd->add_subcommand("family", "thresholds for mL + 2K");
  kdf->add_option("input", in_path)->required();
  kdf->add_option("--very-ample-floor", floor)->required();
  kdf->add_option("--cap", cap);
  bind(kdf, "kodaira family", [&] { return cmd_kodaira_family(in_path, floor, cap); });

  int n_max = 8, trials = 100;
  auto* vf = app.add_subcommand("verify", "built-in verification suites");
  vf->require_subcommand(1);
  auto* vfi = vf->add_subcommand("identities", "the Odaka identity, symbolically");
  vfi->add_option("--n-max", n_max)->check(CLI::Range(1, 20));
  bind(vfi, "verify identities", [&] { return cmd_verify_identities(n_max); });
  auto* vfq = vf->add_subcommand("inequalities", "intersection inequalities on random flag ideals");
  vfq->add_option("--trials", trials)->check(CLI::Range(1, 100000));
  bind(vfq, "verify inequalities", [&] { return cmd_verify_inequalities(trials, seed); });

  std::vector<std::string> direction{"1", "0"}, range{"0", "1", "1/4"};
  auto* sw = app.add_subcommand("sweep", "parameter sweeps");
  sw->require_subcommand(1);
  auto* swt = sw->add_subcommand("twist", "DF along a ray of twists");
  swt->add_option("input", in_path)->required();
  swt->add_option("--direction", direction, "da db")->expected(2);
  swt->add_option("--range", range, "start stop step")->expected(3);
  bind(swt, "sweep twist", [&] { return cmd_sweep(in_path, direction, range); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!in_path.empty()) inputs.push_back(in_path);
  Json report = report_header(command);
  report["inputs"] = inputs;
  report["seed"] = seed;
  int status = 0;
  try {
    auto [body, st] = action();
    for (auto& [k, v] : body.items()) report[k] = v;
    status = st;
  } catch (const Error& e) {
    status = exit_code(e.kind());
    report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    std::cerr << "kstab: " << e.what() << "\n";
  }
  report["status"] = status;

  const std::string text = dump(report);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "kstab: cannot write " << output << "\n";
      return 2;
    }
    out << text;
  }
  return status;
}
