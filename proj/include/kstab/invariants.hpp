#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kstab/poly.hpp"
#include "kstab/torictc.hpp"

namespace kstab {

struct TwistInput {
  Rational KdotL;  // K_X . L^{n-1}
  Rational TdotL;  // T' . L^{n-1}
  Rational Ln;     // L^n
  int n = 1;
};

/// -(K + T').L^{n-1} / L^n
Rational twisted_slope(const TwistInput& t);

/// (b0 (a1 + a_q) - (b1 + b_q) a0) / a0: the r^{2n} coefficient of e_{n+1}(r)
/// divided by a0. Equals DF_T / (2 n!) in intersection normalization.
Rational df_from_coefficients(const HilbertWeightData& d);

/// n/(n+1) mu Lnp1 + LK + LT
Rational df_from_intersections(const Rational& mu, const Rational& Lnp1, const Rational& LK, const Rational& LT, int n);

/// Factor relating the two DF routes: df_from_intersections = 2 n! df_from_coefficients.
Rational df_route_factor(int n);

enum class NormRoute { Intersection, Odaka, B0 };

struct NormInputs {
  NormRoute route = NormRoute::Intersection;
  int n = 1;
  unsigned r = 1;
  std::optional<Rational> LdotL;  // Intersection: 𝓛^n . q*L' with L' = rL
  std::optional<Rational> Lnp1;   // Intersection: 𝓛^{n+1}
  std::optional<Rational> odaka;  // Odaka: (rL - E)^n . (L + n r^{-1} E)
  std::optional<Rational> b0_tilde;  // B0
  std::optional<Rational> b0;        // B0
};

Rational minimum_norm(const NormInputs& in);

/// -n/(n+1) gamma Lnp1 + LT
Rational j_functional(const Rational& gamma, const Rational& Lnp1, const Rational& LT, int n);

/// w~(r,k) / h^(r) at fixed r, as a polynomial in k.
UniPoly chow_weight(const BiPoly& wtilde, const UniPoly& hhat, const Rational& r);

/// DF with a boundary divisor: D enters exactly like a twist, through
/// a_D = -D.L^{n-1}/(2(n-1)!) and b_D = -𝓛^n.𝒟/(2 n!).
Rational log_df(const HilbertWeightData& d, const std::optional<Rational>& DdotL, const std::optional<Rational>& LD);

enum class VerdictKind { DestabilizedBy, NonNegativeOnSuppliedSet, UniformCertificate };
enum class Violation { None, NegativeDF, ZeroDFPositiveNorm, BelowUniformMargin };

struct Verdict {
  VerdictKind kind = VerdictKind::NonNegativeOnSuppliedSet;
  std::optional<std::size_t> index;
  Violation violation = Violation::None;
  std::optional<Rational> epsilon;
};

/// Aggregates (df, norm) pairs. Never issues UniformCertificate.
Verdict verdict(const std::vector<std::pair<Rational, Rational>>& reports, const std::optional<Rational>& epsilon);

std::string to_string(VerdictKind k);
std::string to_string(Violation v);

/// df at twist (a_q, b_q) + t (da, db) for each t.
std::vector<std::pair<Rational, Rational>> twist_sweep(const HilbertWeightData& base, const Rational& da,
                                                       const Rational& db, const std::vector<Rational>& ts);

struct StabilityReport {
  Rational df;
  Rational minimum_norm;
  std::optional<Rational> j_value;
  std::optional<UniPoly> chow_poly;
  Verdict verdict;
  std::map<std::string, std::string> provenance;
};

}  // namespace kstab
