#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kstab/poly.hpp"
#include "kstab/rational.hpp"

namespace kstab {

/// Sparse polynomial over Q in named variables; no stored zero terms.
class MPoly {
 public:
  using Monomial = std::map<std::string, unsigned>;

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT: constants convert implicitly
  MPoly(int c) : MPoly(Rational(c)) {}  // NOLINT
  static MPoly variable(const std::string& name);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (exact value when is_constant()).
  Rational constant_term() const;
  std::vector<std::string> variables() const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return terms_ != o.terms_; }

  MPoly substitute(const std::string& var, const Rational& value) const;
  /// Requires every variable to be assigned.
  Rational evaluate(const std::map<std::string, Rational>& values) const;
  /// Univariate view; throws InvalidInput if another variable occurs.
  UniPoly to_unipoly(const std::string& var) const;
  /// Coefficient of var^k, as a polynomial in the remaining variables.
  MPoly coefficient(const std::string& var, unsigned k) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Formal linear combination of class symbols with polynomial coefficients.
class ClassExpr {
 public:
  ClassExpr() = default;
  static ClassExpr symbol(const std::string& name);

  const std::map<std::string, MPoly>& terms() const { return terms_; }
  ClassExpr operator+(const ClassExpr& o) const;
  ClassExpr operator-(const ClassExpr& o) const;
  ClassExpr operator*(const MPoly& c) const;
  friend ClassExpr operator*(const MPoly& c, const ClassExpr& e) { return e * c; }

 private:
  std::map<std::string, MPoly> terms_;
};

/// Degree-d intersection numbers of formal classes, keyed by sorted multisets.
class IntersectionTable {
 public:
  explicit IntersectionTable(unsigned ambient_degree = 1);

  unsigned ambient_degree() const { return degree_; }
  void set(std::vector<std::string> monomial, const MPoly& value);
  bool has(std::vector<std::string> monomial) const;
  /// Throws MissingEntry when absent; never defaults to zero.
  const MPoly& get(std::vector<std::string> monomial) const;
  const std::map<std::vector<std::string>, MPoly>& entries() const { return entries_; }
  std::vector<std::string> symbols() const;

 private:
  unsigned degree_;
  std::map<std::vector<std::string>, MPoly> entries_;
};

/// Full multilinear expansion of the product of the factors. Throws
/// DegreeMismatch if the number of factors differs from the ambient degree.
MPoly evaluate(const std::vector<ClassExpr>& factors, const IntersectionTable& table);

/// Convenience: base^power . rest...
std::vector<ClassExpr> power_then(const ClassExpr& base, unsigned power, std::vector<ClassExpr> rest);

struct IdentityReport {
  int n = 0;
  bool holds = false;
  MPoly lhs;
  MPoly rhs;
  std::string discrepancy;  // first differing monomial, empty when equal
};

/// (rL-E)^n.(rL+(n-1)E) = -E.E.(sum_{j=1}^{n-1} (n-j)(rL)^{j-1}.(rL-E)^{n-j})
/// under L^{n+1} = 0 and L^n.E = 0, over free parameters p_i = L^i.E^{n+1-i}.
IdentityReport verify_odaka_identity(int n);

struct InequalityItem {
  std::string name;
  Rational value;
  bool holds = false;
};

struct InequalityReport {
  std::vector<InequalityItem> items;
  /// L^n.E; the inequalities are only claimed when it vanishes (E has no
  /// fibre component).
  Rational LnE;
  bool hypotheses_hold() const { return LnE == 0; }
  bool all_hold() const;
};

/// (i) (rL-E)^n.R <= 0 for each nef R, (ii) (rL-E)^n.E > 0,
/// (iii) (rL-E)^n.(rL+nE) > 0, and (rL-E)^n.(rL+(n-1)E) >= 0.
InequalityReport check_inequalities(const IntersectionTable& table, unsigned r, const ClassExpr& L, const ClassExpr& E,
                                    const std::vector<std::pair<std::string, ClassExpr>>& nef);

/// Expands the product (coefficients may involve the variable `var`) into a
/// polynomial in that variable.
UniPoly m_expansion(const std::vector<ClassExpr>& factors, const IntersectionTable& table,
                    const std::string& var = "m");

}  // namespace kstab
