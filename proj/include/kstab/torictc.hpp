#pragma once

#include <optional>
#include <vector>

#include "kstab/poly.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

struct ToricPolarisedPair {
  LatticePolytope polytope;                 // full-dimensional moment polytope of (X, L)
  std::optional<LatticePolytope> twist;     // nef class T' = p*T, possibly lower-dimensional

  int n() const { return polytope.ambient_dim(); }
  /// Throws DimensionMismatch / InvalidInput on malformed pairs.
  void validate() const;
};

/// (P, f, R) with exponent r0. f and R live on the working polytope r0 * P,
/// so the configuration is one for (X, L^r0).
struct ToricTestConfiguration {
  ToricPolarisedPair pair;
  PLConvexFunction f;
  Rational R;
  unsigned exponent = 1;

  LatticePolytope working_polytope() const;
  int n() const { return pair.n(); }
};

/// Validates 0 <= f <= R on the working polytope, drops pieces of f that are
/// nowhere maximal and returns the configuration.
ToricTestConfiguration make_test_configuration(ToricPolarisedPair pair, const PLConvexFunction& f, const Rational& R,
                                               unsigned exponent = 1);

/// True when f is constant on the working polytope.
bool is_trivial(const ToricTestConfiguration& tc);

struct FlagGenerator {
  Point exponent;
  unsigned t_power = 0;
};

/// I_0 + I_1 t + ... + (t^N), given by monomial generators x^a t^j.
struct MonomialFlagIdeal {
  std::vector<FlagGenerator> generators;

  unsigned N() const;
  void validate(int n) const;
};

/// The configuration of rL - E for the blow-up of the flag ideal: f is the
/// lower envelope of the Newton polyhedron of I on rP, and R = N. Requires the
/// origin to be a vertex of P and P in the nonnegative orthant. Throws
/// NotSemiample when the resulting graph polytope is not a lattice polytope.
ToricTestConfiguration from_flag_ideal(const ToricPolarisedPair& pair, const MonomialFlagIdeal& ideal, unsigned r);

/// ord_I(x^m) = min{ j : (m, j) in Newton polyhedron of I } as a PL function
/// on the nonnegative orthant.
PLConvexFunction newton_envelope(const MonomialFlagIdeal& ideal, int n);

struct HilbertWeightData {
  Rational a0, a1;
  Rational b0, b1;
  Rational a_q, b_q;
  int n = 0;
  unsigned r_exponent = 1;
};

/// Least positive integer S with S * Q_f and S * R integral; every count below
/// is taken at multiples of S and rescaled by homogeneity.
Integer integral_scale(const ToricTestConfiguration& tc);

/// S * Q_f as a lattice polytope, for S = integral_scale(tc).
LatticePolytope scaled_graph(const ToricTestConfiguration& tc);

/// W(r) = #(rQ_f) - #(rP'), fitted as a degree n+1 polynomial on r = 1..n+4
/// (last two are verification samples). When Q_f is a lattice polytope with
/// integral heights at lattice points this is sum_{x in rP'} (rR - f_r(x)).
UniPoly weight_polynomial(const ToricTestConfiguration& tc);

HilbertWeightData hilbert_weight_data(const ToricTestConfiguration& tc);

/// Brute-force w~(r,k) = w(r,k) h^(r) - w^(r) k h(r,k) with the bookkeeping
/// M = T'/2 (k is sampled at even values only, so k M is a lattice twist).
/// Needs r_max >= 2n+2 and k_max >= 2(n+2).
BiPoly bivariate_weight_oracle(const ToricTestConfiguration& tc, unsigned r_max, unsigned k_max);

/// Intersection numbers on the working polytope: LdotL = 𝓛^n . q*L',
/// Lnp1 = 𝓛^{n+1}, with L' = r0 L.
struct NormData {
  Rational LdotL;
  Rational Lnp1;
};
NormData norm_data(const ToricTestConfiguration& tc);

/// Leading l^n coefficient of p(l,0) - p(l,-1), where p(l,s) interpolates
/// #(l Q_f + s (P' x 0)); found by lattice counting only.
Rational b0_tilde(const ToricTestConfiguration& tc);

/// Inputs of the intersection-theoretic DF formula, from facet lattice
/// volumes and mixed volumes.
struct ToricDFInputs {
  Rational mu;    // twisted slope of (X, L')
  Rational Lnp1;  // 𝓛^{n+1}
  Rational LK;    // 𝓛^n . K_{𝒳/P^1}
  Rational LKX;   // 𝓛^n . p*K_X; LK - LKX is the relative canonical term
  Rational LT;    // 𝓛^n . T'
  Rational Ln;    // L'^n
  Rational KLn1;  // K_X . L'^{n-1}
  Rational TLn1;  // T' . L'^{n-1}
};
ToricDFInputs toric_df_inputs(const ToricTestConfiguration& tc);

}  // namespace kstab
