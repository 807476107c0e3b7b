#pragma once

#include <optional>

#include "kstab/intersect.hpp"
#include "kstab/poly.hpp"
#include "kstab/torictc.hpp"

namespace kstab {

/// 1 / ((n - b + 1) V)
Rational delta(int n, int b, const Rational& V);

/// mu(X, L_U + m L_B) = lambda0 + lambda1 / m + O(m^-2).
struct SlopeExpansion {
  Rational lambda0;
  Rational lambda1;
};
SlopeExpansion slope_expansion(int n, int b, const Rational& mu_fibre, const Rational& base_slope);

/// Intersection data of a test configuration (B, L_B) of the base, possibly
/// twisted: mu is its twisted slope, LT = L_B^b . T (zero when untwisted).
struct BaseConfiguration {
  int b = 1;
  Rational mu;
  Rational Lnp1;  // L_B^{b+1}
  Rational LK;    // L_B^b . K_{B/P^1}
  Rational LT;
};

/// Base data of a toric test configuration, read off toric_df_inputs.
BaseConfiguration toric_base(const ToricTestConfiguration& tc);

/// Intersection-normalized DF of the base.
Rational base_df(const BaseConfiguration& base);

/// Total space of the induced configuration: degree n+1 table with the
/// classes L_U, L_B (pulled back) and the relative canonical class K.
struct FibrationData {
  int n = 2;
  int b = 1;
  Rational V;         // fibre volume L_U^{n-b} on a fibre
  Rational mu_fibre;  // fibre slope
  IntersectionTable table;
  ClassExpr LU, LB, K;
};

/// Kunneth table of B x F: base numbers from `base`, fibre numbers
/// V = L_F^{n-b} and KF = K_F . L_F^{n-b-1}. Only monomials with at most one
/// canonical factor are filled; the DF never needs the others.
FibrationData split_fibration(int n, const BaseConfiguration& base, const Rational& V, const Rational& KF);

/// DF(m) truncated after the slope expansion:
///   n/(n+1) (lambda0 + lambda1/m) (L_U + m L_B)^{n+1} + (L_U + m L_B)^n . K,
/// stored as the polynomial m DF(m). Exact when the slope is exactly
/// lambda0 + lambda1/m (split products).
struct DFExpansion {
  int b = 1;
  UniPoly times_m;
  Rational coeff_b_plus_1;
  Rational coeff_b;
  Rational base_df;   // intersection-normalized DF of the base
  Rational expected;  // V C(n,b) base_df
  bool consistent = false;

  /// Coefficient of m^power, power >= -1.
  Rational coeff(int power) const;
};

/// Throws LeadingTermNonzero if the m^{b+1} coefficient survives. A mismatch
/// of the m^b coefficient is reported through `consistent`, never absorbed.
DFExpansion df_m_expansion(const FibrationData& data, const BaseConfiguration& base);

/// c1 of the CM line on a curve base: (n-1) mu A + n B, with
/// A = L_U^n and B = K_{X/B} . L_U^{n-1} pushed forward.
Rational cm_degree(int n, const Rational& mu_fibre, const Rational& A, const Rational& B);

/// Least integer m0 >= 1 with DF(m) < 0 for all integers m >= m0. Throws
/// Inconclusive when the leading coefficient is not negative.
Integer propagate_instability(const UniPoly& df_of_m);
/// Same on m DF(m); DF and m DF have the same sign for m >= 1.
Integer propagate_instability(const DFExpansion& e);

}  // namespace kstab
