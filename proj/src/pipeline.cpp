#include "kstab/pipeline.hpp"

#include "kstab/error.hpp"
#include "kstab/toric_intersect.hpp"

namespace kstab {

std::string to_string(NormRoute r) {
  switch (r) {
    case NormRoute::Intersection: return "intersection";
    case NormRoute::Odaka: return "odaka";
    case NormRoute::B0: return "b0";
  }
  return "?";
}

NormRoute parse_norm_route(const std::string& name) {
  if (name == "intersection") return NormRoute::Intersection;
  if (name == "odaka") return NormRoute::Odaka;
  if (name == "b0") return NormRoute::B0;
  throw Error(ErrorKind::InvalidInput, "unknown norm route '" + name + "'");
}

Rational toric_norm(const ToricTestConfiguration& tc, NormRoute route) {
  NormInputs in;
  in.route = route;
  in.n = tc.n();
  in.r = tc.exponent;
  switch (route) {
    case NormRoute::Intersection: {
      const auto nd = norm_data(tc);
      in.LdotL = nd.LdotL;
      in.Lnp1 = nd.Lnp1;
      break;
    }
    case NormRoute::Odaka:
      in.odaka = odaka_value(toric_intersection_setup(tc));
      break;
    case NormRoute::B0:
      in.b0_tilde = b0_tilde(tc);
      in.b0 = hilbert_weight_data(tc).b0;
      break;
  }
  return minimum_norm(in);
}

ToricDFReport toric_df_report(const ToricTestConfiguration& tc) {
  ToricDFReport out;
  out.hilbert = hilbert_weight_data(tc);
  out.df_coefficients = df_from_coefficients(out.hilbert);
  out.inputs = toric_df_inputs(tc);
  const auto& in = out.inputs;
  out.df_intersection = df_from_intersections(in.mu, in.Lnp1, in.LK, in.LT, tc.n());
  out.norm_intersection = toric_norm(tc, NormRoute::Intersection);
  out.norm_odaka = toric_norm(tc, NormRoute::Odaka);
  out.norm_b0 = toric_norm(tc, NormRoute::B0);
  out.routes_agree = out.df_intersection == df_route_factor(tc.n()) * out.df_coefficients &&
                     out.norm_intersection == out.norm_odaka && out.norm_odaka == out.norm_b0;
  out.trivial = is_trivial(tc);
  out.verdict = verdict({{out.df_coefficients, out.norm_intersection}}, std::nullopt);
  return out;
}

}  // namespace kstab
