#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

/// Dense univariate polynomial over the rationals. The coefficient vector is
/// trimmed so the leading coefficient is nonzero; the zero polynomial has no
/// coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, unsigned degree);
  /// The polynomial x - root.
  static UniPoly linear_root(const Rational& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of x^i; zero beyond the degree.
  Rational coeff(unsigned i) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rational& c) const;
  UniPoly operator-() const;
  bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }

  UniPoly derivative() const;
  /// p(x) -> p(c x).
  UniPoly rescale_argument(const Rational& c) const;
  UniPoly monic() const;

  /// Euclidean division; throws DivisionByZero on a zero divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

UniPoly gcd(UniPoly a, UniPoly b);

/// Reduced quotient num/den of polynomials with a monic denominator.
struct RationalFunction {
  UniPoly num;
  UniPoly den;

  static RationalFunction reduced(const UniPoly& num, const UniPoly& den);
  Rational operator()(const Rational& x) const;
};

/// Sparse bivariate polynomial sum c_{ij} r^i k^j without stored zeros.
class BiPoly {
 public:
  using Key = std::pair<unsigned, unsigned>;

  BiPoly() = default;
  void add(unsigned r_degree, unsigned k_degree, const Rational& c);
  Rational coeff(unsigned r_degree, unsigned k_degree) const;
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int r_degree() const;
  int k_degree() const;
  Rational operator()(const Rational& r, const Rational& k) const;
  /// Fixes r and returns the polynomial in k.
  UniPoly at_r(const Rational& r) const;
  bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }

 private:
  std::map<Key, Rational> terms_;
};

struct Sample {
  Rational x;
  Rational y;
};

/// Newton divided-difference interpolation through the first degree+1
/// samples. Any further samples are verification samples and must lie on the
/// fitted polynomial, otherwise InconsistentSamples is thrown.
UniPoly interpolate(const std::vector<Sample>& samples, unsigned degree);

/// Splits wtilde(r,k) = sum_i e_i(r) k^i, returning e_1..e_{n+1} (index 0 of
/// the result is e_1). k-degree above n+1 is DegreeOverflow; a nonzero k^0
/// part is InvalidInput.
std::vector<UniPoly> extract_e_coefficients(const BiPoly& wtilde, unsigned n);

/// Reassembles sum_i e_i(r) k^i from the output of extract_e_coefficients.
BiPoly assemble_e_coefficients(const std::vector<UniPoly>& e);

/// Coefficient of x^expected_degree; DegreeOverflow if deg p exceeds it.
Rational leading_coefficient(const UniPoly& p, int expected_degree);

/// Number of distinct real roots in the half-open interval (a, b] via a Sturm
/// chain; b = nullopt means +infinity.
int count_real_roots(const UniPoly& p, const Rational& a, const std::optional<Rational>& b);

enum class SignCondition { Positive, NonNegative, Negative, NonPositive };

/// Least integer m0 >= floor_value such that p(m) satisfies the condition for
/// every integer m >= m0. Returns nullopt when no such m0 exists, i.e. the
/// eventual sign of p is incompatible with the condition.
std::optional<Integer> eventual_threshold(const UniPoly& p, SignCondition cond, const Integer& floor_value);

}  // namespace kstab
