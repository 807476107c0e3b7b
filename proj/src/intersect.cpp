#include "kstab/intersect.hpp"

#include <algorithm>
#include <set>

#include "kstab/error.hpp"

namespace kstab {

namespace {

std::string join_monomial(const std::vector<std::string>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "." : "") + m[i];
  return s;
}

}  // namespace

MPoly::MPoly(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

MPoly MPoly::variable(const std::string& name) {
  MPoly p;
  p.terms_[{{name, 1}}] = 1;
  return p;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational MPoly::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::string> MPoly::variables() const {
  std::set<std::string> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) vs.insert(v);
  return {vs.begin(), vs.end()};
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly out = *this;
  out += o;
  return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly out;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2) m[v] += e;
      out.add_term(m, c1 * c2);
    }
  }
  return out;
}

MPoly MPoly::substitute(const std::string& var, const Rational& value) const {
  MPoly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    Rational f = c;
    auto it = rest.find(var);
    if (it != rest.end()) {
      f *= rational_power(value, it->second);
      rest.erase(it);
    }
    out.add_term(rest, f);
  }
  return out;
}

Rational MPoly::evaluate(const std::map<std::string, Rational>& values) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) throw Error(ErrorKind::MissingInput, "no value for parameter " + v);
      t *= rational_power(it->second, e);
    }
    acc += t;
  }
  return acc;
}

UniPoly MPoly::to_unipoly(const std::string& var) const {
  std::vector<Rational> c;
  for (const auto& [m, coef] : terms_) {
    unsigned e = 0;
    for (const auto& [v, p] : m) {
      if (v != var) throw Error(ErrorKind::InvalidInput, "polynomial depends on " + v + " besides " + var);
      e = p;
    }
    if (c.size() <= e) c.resize(e + 1);
    c[e] += coef;
  }
  return UniPoly(std::move(c));
}

MPoly MPoly::coefficient(const std::string& var, unsigned k) const {
  MPoly out;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    const unsigned e = it == m.end() ? 0 : it->second;
    if (e != k) continue;
    Monomial rest = m;
    rest.erase(var);
    out.add_term(rest, c);
  }
  return out;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string t = kstab::to_string(c);
    for (const auto& [v, e] : m) t += "*" + v + (e > 1 ? "^" + std::to_string(e) : "");
    if (!first) s += " + ";
    s += t;
    first = false;
  }
  return s;
}

ClassExpr ClassExpr::symbol(const std::string& name) {
  ClassExpr e;
  e.terms_[name] = MPoly(1);
  return e;
}

ClassExpr ClassExpr::operator+(const ClassExpr& o) const {
  ClassExpr out = *this;
  for (const auto& [s, c] : o.terms_) {
    MPoly v = out.terms_[s] + c;
    if (v.is_zero()) out.terms_.erase(s);
    else out.terms_[s] = v;
  }
  return out;
}

ClassExpr ClassExpr::operator-(const ClassExpr& o) const { return *this + o * MPoly(-1); }

ClassExpr ClassExpr::operator*(const MPoly& c) const {
  ClassExpr out;
  if (c.is_zero()) return out;
  for (const auto& [s, v] : terms_) out.terms_[s] = v * c;
  return out;
}

IntersectionTable::IntersectionTable(unsigned ambient_degree) : degree_(ambient_degree) {
  if (ambient_degree == 0) throw Error(ErrorKind::InvalidInput, "ambient degree must be positive");
}

void IntersectionTable::set(std::vector<std::string> monomial, const MPoly& value) {
  if (monomial.size() != degree_) {
    throw Error(ErrorKind::DegreeMismatch, "entry " + join_monomial(monomial) + " has degree " +
                                               std::to_string(monomial.size()) + ", table degree is " +
                                               std::to_string(degree_));
  }
  std::sort(monomial.begin(), monomial.end());
  entries_[monomial] = value;
}

bool IntersectionTable::has(std::vector<std::string> monomial) const {
  std::sort(monomial.begin(), monomial.end());
  return entries_.count(monomial) > 0;
}

const MPoly& IntersectionTable::get(std::vector<std::string> monomial) const {
  std::sort(monomial.begin(), monomial.end());
  auto it = entries_.find(monomial);
  if (it == entries_.end()) throw Error(ErrorKind::MissingEntry, "no table entry for " + join_monomial(monomial));
  return it->second;
}

std::vector<std::string> IntersectionTable::symbols() const {
  std::set<std::string> s;
  for (const auto& [m, v] : entries_) s.insert(m.begin(), m.end());
  return {s.begin(), s.end()};
}

MPoly evaluate(const std::vector<ClassExpr>& factors, const IntersectionTable& table) {
  if (factors.size() != table.ambient_degree()) {
    throw Error(ErrorKind::DegreeMismatch, "product of " + std::to_string(factors.size()) +
                                               " classes in a table of degree " +
                                               std::to_string(table.ambient_degree()));
  }
  std::map<std::vector<std::string>, MPoly> acc{{{}, MPoly(1)}};
  for (const auto& f : factors) {
    std::map<std::vector<std::string>, MPoly> next;
    for (const auto& [key, c] : acc) {
      for (const auto& [sym, coef] : f.terms()) {
        auto k = key;
        k.insert(std::upper_bound(k.begin(), k.end(), sym), sym);
        next[k] += c * coef;
      }
    }
    acc = std::move(next);
  }
  MPoly out;
  for (const auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    out += c * table.get(key);
  }
  return out;
}

std::vector<ClassExpr> power_then(const ClassExpr& base, unsigned power, std::vector<ClassExpr> rest) {
  std::vector<ClassExpr> out(power, base);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

IdentityReport verify_odaka_identity(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be positive");
  IntersectionTable t(n + 1);
  for (int i = 0; i <= n + 1; ++i) {
    std::vector<std::string> m(i, "L");
    m.resize(n + 1, "E");
    if (i >= n) t.set(m, MPoly(0));
    else t.set(m, MPoly::variable("p_" + std::to_string(i)));
  }
  const MPoly r = MPoly::variable("r");
  const ClassExpr L = ClassExpr::symbol("L"), E = ClassExpr::symbol("E");
  const ClassExpr rL = L * r;
  const ClassExpr A = rL - E;

  IdentityReport rep;
  rep.n = n;
  rep.lhs = evaluate(power_then(A, n, {rL + E * MPoly(n - 1)}), t);
  for (int j = 1; j <= n - 1; ++j) {
    std::vector<ClassExpr> fs{E, E};
    for (int k = 0; k < j - 1; ++k) fs.push_back(rL);
    for (int k = 0; k < n - j; ++k) fs.push_back(A);
    rep.rhs += evaluate(fs, t) * MPoly(-(n - j));
  }
  rep.holds = rep.lhs == rep.rhs;
  if (!rep.holds) {
    const MPoly diff = rep.lhs - rep.rhs;
    const auto& [m, c] = *diff.terms().begin();
    MPoly mono;
    mono = MPoly(c);
    for (const auto& [v, e] : m)
      for (unsigned k = 0; k < e; ++k) mono = mono * MPoly::variable(v);
    rep.discrepancy = mono.to_string();
  }
  return rep;
}

bool InequalityReport::all_hold() const {
  return std::all_of(items.begin(), items.end(), [](const InequalityItem& i) { return i.holds; });
}

InequalityReport check_inequalities(const IntersectionTable& table, unsigned r, const ClassExpr& L, const ClassExpr& E,
                                    const std::vector<std::pair<std::string, ClassExpr>>& nef) {
  const unsigned n = table.ambient_degree() - 1;
  const ClassExpr rL = L * MPoly(Rational(r));
  const ClassExpr A = rL - E;
  auto value = [&](const ClassExpr& last) {
    const MPoly v = evaluate(power_then(A, n, {last}), table);
    if (!v.is_constant()) throw Error(ErrorKind::InvalidInput, "inequality check needs a numeric table");
    return v.constant_term();
  };
  InequalityReport rep;
  {
    const MPoly v = evaluate(power_then(L, n, {E}), table);
    if (!v.is_constant()) throw Error(ErrorKind::InvalidInput, "inequality check needs a numeric table");
    rep.LnE = v.constant_term();
  }
  for (const auto& [name, R] : nef) {
    const Rational v = value(R);
    rep.items.push_back({"(i) (rL-E)^n." + name + " <= 0", v, v <= 0});
  }
  const Rational ii = value(E);
  rep.items.push_back({"(ii) (rL-E)^n.E > 0", ii, ii > 0});
  const Rational iii = value(rL + E * MPoly(n));
  rep.items.push_back({"(iii) (rL-E)^n.(rL+nE) > 0", iii, iii > 0});
  const Rational imp = value(rL + E * MPoly(n - 1));
  rep.items.push_back({"(rL-E)^n.(rL+(n-1)E) >= 0", imp, imp >= 0});
  return rep;
}

UniPoly m_expansion(const std::vector<ClassExpr>& factors, const IntersectionTable& table, const std::string& var) {
  return evaluate(factors, table).to_unipoly(var);
}

}  // namespace kstab
