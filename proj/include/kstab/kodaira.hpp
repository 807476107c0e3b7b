#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kstab/poly.hpp"
#include "kstab/torictc.hpp"

namespace kstab {

/// A numerical class as a coordinate vector; in toric mode the coordinates
/// are the coefficients of the boundary divisors D_1..D_k (facets of P).
using ClassVector = std::vector<Rational>;

struct NefCertificate {
  std::vector<std::pair<std::string, Rational>> combination;  // generator name, coefficient >= 0
};

/// Certifies nefness by writing a class as a nonnegative combination of
/// registered nef generators, modulo declared relations (classes numerically
/// zero). Sufficient only: a failure means "unknown".
class NefOracle {
 public:
  explicit NefOracle(std::size_t dim, std::vector<ClassVector> relations = {});
  /// Toric mode on the moment polytope P: classes are divisor vectors over
  /// the facets of P, relations are the principal divisors div(x^m).
  static NefOracle toric(const LatticePolytope& p);

  std::size_t dim() const { return dim_; }
  void add_generator(const std::string& name, ClassVector g);
  /// Toric mode: registers the divisor h_i = max_{q in Q} <q, n_i> after
  /// checking it is nef on P (P must be simple). Throws InvalidInput otherwise.
  void add_polytope(const std::string& name, const LatticePolytope& q);

  /// Toric mode: divisor vector of a polytope, and of K_X = -sum D_i.
  ClassVector divisor_of(const LatticePolytope& q) const;
  ClassVector canonical() const;
  bool toric_mode() const { return polytope_.has_value(); }

  std::optional<NefCertificate> certify(const ClassVector& c) const;
  const std::vector<std::pair<std::string, ClassVector>>& generators() const { return generators_; }

 private:
  std::size_t dim_;
  std::vector<ClassVector> relations_;
  std::vector<std::pair<std::string, ClassVector>> generators_;
  std::optional<LatticePolytope> polytope_;
};

struct EmbeddingThreshold {
  unsigned k_min = 0;         // proof-backed bound, not optimal
  Rational epsilon;           // 1/(n(n+1))
  unsigned k_hat_bound = 0;   // least k with k/(2(n+1)) >= 1
  unsigned nef_bound = 0;     // least k whose class is certified nef
  ClassVector candidate;      // the class at k_min
  NefCertificate certificate;
};

/// Least k with k^ = k/(2(n+1)) >= 1 and -(n mu/(n+1)) L - K + (k^/n) L
/// certified nef. Throws NefCertificateUnavailable if no k <= k_cap works.
EmbeddingThreshold embedding_threshold(int n, const Rational& mu, const ClassVector& L, const ClassVector& K,
                                       const NefOracle& oracle, unsigned k_cap = 1000);

/// Toric pair: mu from the facets of P, L = divisor of P, K = -sum D_i. The
/// oracle defaults to the one generated by L alone.
EmbeddingThreshold embedding_threshold(const LatticePolytope& p, const std::optional<NefOracle>& oracle = std::nullopt,
                                       unsigned k_cap = 1000);

/// [L^n, L^{n-1}.K, ..., K^n]
struct ChernNumbers {
  int n = 1;
  std::vector<Rational> values;
  void validate() const;
};

/// mu(X, mL + 2K) = num(m) / den(m).
std::pair<UniPoly, UniPoly> family_slope(const ChernNumbers& c);

struct FamilyThreshold {
  unsigned m_min = 0;
  std::vector<std::pair<unsigned, unsigned>> k_min;  // (m, k) for m_min <= m <= m_cap
  UniPoly num, den;
};

/// m_min: least m >= m_floor with mL+2K of positive degree and mu(m) <= 1 for
/// every m' >= m. Throws NoThresholdBelowCap when m_min > m_cap.
FamilyThreshold family_threshold(const ChernNumbers& c, unsigned m_cap, unsigned m_floor);

struct JDFDecomposition {
  Rational df;
  std::optional<std::string> warning;  // NegativeDiscrepancy
};

/// DF = J_{K+kT} + (rL-E)^n . K_{B / X x P^1}.
JDFDecomposition j_df_decomposition(const Rational& j_value, const Rational& relative_canonical, bool log_canonical);

/// Both summands for a toric configuration (intersection normalization).
std::pair<Rational, Rational> toric_j_and_relative_canonical(const ToricTestConfiguration& tc);

}  // namespace kstab
