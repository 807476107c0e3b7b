#include "kstab/invariants.hpp"

#include "kstab/error.hpp"

namespace kstab {

Rational twisted_slope(const TwistInput& t) {
  if (t.Ln <= 0) throw Error(ErrorKind::InvalidInput, "L^n must be positive");
  return -(t.KdotL + t.TdotL) / t.Ln;
}

Rational df_from_coefficients(const HilbertWeightData& d) {
  if (d.a0 <= 0) throw Error(ErrorKind::InvalidInput, "a0 must be positive");
  return (d.b0 * (d.a1 + d.a_q) - (d.b1 + d.b_q) * d.a0) / d.a0;
}

Rational df_from_intersections(const Rational& mu, const Rational& Lnp1, const Rational& LK, const Rational& LT, int n) {
  return Rational(n, n + 1) * mu * Lnp1 + LK + LT;
}

Rational df_route_factor(int n) { return Rational(2 * factorial(n)); }

Rational minimum_norm(const NormInputs& in) {
  if (in.r == 0) throw Error(ErrorKind::InvalidInput, "exponent must be positive");
  const Rational n(in.n);
  const Rational r(in.r);
  auto need = [](const std::optional<Rational>& v, const char* name) -> const Rational& {
    if (!v) throw Error(ErrorKind::MissingInput, std::string("minimum norm route needs ") + name);
    return *v;
  };
  switch (in.route) {
    case NormRoute::Intersection:
      return (need(in.LdotL, "LdotL") - n / (n + 1) * need(in.Lnp1, "Lnp1")) / r;
    case NormRoute::Odaka:
      return need(in.odaka, "the Odaka intersection number") / (n + 1);
    case NormRoute::B0:
      return Rational(factorial(in.n)) / r * (need(in.b0_tilde, "b0_tilde") - n * need(in.b0, "b0"));
  }
  throw Error(ErrorKind::InvalidInput, "unknown norm route");
}

Rational j_functional(const Rational& gamma, const Rational& Lnp1, const Rational& LT, int n) {
  return -Rational(n, n + 1) * gamma * Lnp1 + LT;
}

UniPoly chow_weight(const BiPoly& wtilde, const UniPoly& hhat, const Rational& r) {
  const Rational h = hhat(r);
  if (h == 0) throw Error(ErrorKind::DivisionByZero, "h(r) vanishes at r = " + to_string(r));
  return wtilde.at_r(r) * (1 / h);
}

Rational log_df(const HilbertWeightData& d, const std::optional<Rational>& DdotL, const std::optional<Rational>& LD) {
  if (DdotL.has_value() != LD.has_value()) {
    throw Error(ErrorKind::MissingInput, "log DF needs both D.L^{n-1} and the total-space term");
  }
  HilbertWeightData e = d;
  if (DdotL) {
    e.a_q += -*DdotL / Rational(2 * factorial(d.n - 1));
    e.b_q += -*LD / Rational(2 * factorial(d.n));
  }
  return df_from_coefficients(e);
}

Verdict verdict(const std::vector<std::pair<Rational, Rational>>& reports, const std::optional<Rational>& epsilon) {
  Verdict v;
  v.epsilon = epsilon;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& [df, norm] = reports[i];
    if (norm < 0) throw Error(ErrorKind::InvalidInput, "negative minimum norm at index " + std::to_string(i));
    Violation bad = Violation::None;
    if (df < 0) bad = Violation::NegativeDF;
    else if (df == 0 && norm > 0) bad = Violation::ZeroDFPositiveNorm;
    else if (epsilon && df < *epsilon * norm) bad = Violation::BelowUniformMargin;
    if (bad != Violation::None) {
      v.kind = VerdictKind::DestabilizedBy;
      v.index = i;
      v.violation = bad;
      return v;
    }
  }
  return v;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::DestabilizedBy: return "DestabilizedBy";
    case VerdictKind::NonNegativeOnSuppliedSet: return "NonNegativeOnSuppliedSet";
    case VerdictKind::UniformCertificate: return "UniformCertificate";
  }
  return "?";
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::None: return "none";
    case Violation::NegativeDF: return "negative_df";
    case Violation::ZeroDFPositiveNorm: return "zero_df_positive_norm";
    case Violation::BelowUniformMargin: return "below_uniform_margin";
  }
  return "?";
}

std::vector<std::pair<Rational, Rational>> twist_sweep(const HilbertWeightData& base, const Rational& da,
                                                       const Rational& db, const std::vector<Rational>& ts) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& t : ts) {
    HilbertWeightData d = base;
    d.a_q += t * da;
    d.b_q += t * db;
    out.emplace_back(t, df_from_coefficients(d));
  }
  return out;
}

}  // namespace kstab
