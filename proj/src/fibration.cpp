#include "kstab/fibration.hpp"

#include "kstab/error.hpp"
#include "kstab/invariants.hpp"

namespace kstab {

namespace {

void check_dims(int n, int b) {
  if (b <= 0 || b >= n) throw Error(ErrorKind::InvalidInput, "need 0 < b < n");
}

Rational binom(int n, int k) { return Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))); }

}  // namespace

Rational delta(int n, int b, const Rational& V) {
  check_dims(n, b);
  if (V <= 0) throw Error(ErrorKind::InvalidInput, "fibre volume must be positive");
  return 1 / (Rational(n - b + 1) * V);
}

SlopeExpansion slope_expansion(int n, int b, const Rational& mu_fibre, const Rational& base_slope) {
  check_dims(n, b);
  return {Rational(n - b) / n * mu_fibre, Rational(b) / n * base_slope};
}

BaseConfiguration toric_base(const ToricTestConfiguration& tc) {
  const auto in = toric_df_inputs(tc);
  return {tc.n(), in.mu, in.Lnp1, in.LK, in.LT};
}

Rational base_df(const BaseConfiguration& base) {
  return df_from_intersections(base.mu, base.Lnp1, base.LK, base.LT, base.b);
}

FibrationData split_fibration(int n, const BaseConfiguration& base, const Rational& V, const Rational& KF) {
  const int b = base.b;
  check_dims(n, b);
  if (V <= 0) throw Error(ErrorKind::InvalidInput, "fibre volume must be positive");
  // a product family has trivial CM line, so the base carries no twist
  if (base.LT != 0) throw Error(ErrorKind::InvalidInput, "split products take an untwisted base");

  FibrationData d;
  d.n = n;
  d.b = b;
  d.V = V;
  d.mu_fibre = -KF / V;
  d.table = IntersectionTable(static_cast<unsigned>(n + 1));
  d.LU = ClassExpr::symbol("LU");
  d.LB = ClassExpr::symbol("LB");
  d.K = ClassExpr::symbol("KB") + ClassExpr::symbol("KF");

  const int f = n - b;
  for (int l = 0; l <= n + 1; ++l) {
    // LU^{n+1-l} LB^l
    std::vector<std::string> m(n + 1 - l, "LU");
    m.resize(n + 1, "LB");
    d.table.set(m, l == b + 1 ? V * base.Lnp1 : Rational(0));
    if (l > n) continue;
    // one canonical factor from either side
    std::vector<std::string> mf(n - l, "LU");
    mf.resize(n, "LB");
    auto kf = mf, kb = mf;
    kf.push_back("KF");
    kb.push_back("KB");
    d.table.set(kf, (l == b + 1 && n - l == f - 1) ? KF * base.Lnp1 : Rational(0));
    d.table.set(kb, (l == b && n - l == f) ? V * base.LK : Rational(0));
  }
  return d;
}

Rational DFExpansion::coeff(int power) const {
  if (power < -1) return 0;
  return times_m.coeff(static_cast<unsigned>(power + 1));
}

DFExpansion df_m_expansion(const FibrationData& data, const BaseConfiguration& base) {
  const int n = data.n, b = data.b;
  check_dims(n, b);
  if (base.b != b) throw Error(ErrorKind::DimensionMismatch, "base configuration has the wrong dimension");
  const auto [l0, l1] = slope_expansion(n, b, data.mu_fibre, base.mu);

  const MPoly m = MPoly::variable("m");
  const ClassExpr Lm = data.LU + data.LB * m;
  const UniPoly top = m_expansion(std::vector<ClassExpr>(n + 1, Lm), data.table);
  const UniPoly canon = m_expansion(power_then(Lm, n, {data.K}), data.table);

  const Rational c = Rational(n) / (n + 1);
  DFExpansion e;
  e.b = b;
  e.times_m = top * UniPoly({c * l1, c * l0}) + canon * UniPoly::monomial(1, 1);
  e.coeff_b_plus_1 = e.coeff(b + 1);
  e.coeff_b = e.coeff(b);
  e.base_df = base_df(base);
  e.expected = data.V * binom(n, b) * e.base_df;
  e.consistent = e.coeff_b == e.expected;
  for (int p = b + 2; p <= n + 2; ++p) {
    if (e.coeff(p) != 0) throw Error(ErrorKind::LeadingTermNonzero, "DF has a nonzero m^" + std::to_string(p) + " term");
  }
  if (e.coeff_b_plus_1 != 0) {
    throw Error(ErrorKind::LeadingTermNonzero, "m^" + std::to_string(b + 1) + " coefficient is " +
                                                   to_string(e.coeff_b_plus_1) + ", table inconsistent");
  }
  return e;
}

Rational cm_degree(int n, const Rational& mu_fibre, const Rational& A, const Rational& B) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "a fibration over a curve needs n >= 2");
  return Rational(n - 1) * mu_fibre * A + Rational(n) * B;
}

Integer propagate_instability(const UniPoly& df_of_m) {
  if (df_of_m.is_zero() || df_of_m.leading() >= 0) {
    throw Error(ErrorKind::Inconclusive, "leading coefficient is not negative");
  }
  auto m0 = eventual_threshold(df_of_m, SignCondition::Negative, Integer(1));
  if (!m0) throw Error(ErrorKind::Inconclusive, "no eventual negativity");
  return *m0;
}

Integer propagate_instability(const DFExpansion& e) {
  if (e.coeff_b >= 0) throw Error(ErrorKind::Inconclusive, "m^b coefficient is not negative");
  return propagate_instability(e.times_m);
}

}  // namespace kstab
