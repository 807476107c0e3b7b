#include "kstab/poly.hpp"

#include <algorithm>
#include <sstream>

#include "kstab/error.hpp"

namespace kstab {

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::monomial(const Rational& c, unsigned degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::linear_root(const Rational& root) { return UniPoly({-root, Rational(1)}); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(unsigned i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

Rational UniPoly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
  std::vector<Rational> v(coeffs_);
  for (auto& c : v) c = -c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator*(const Rational& c) const {
  std::vector<Rational> v(coeffs_);
  for (auto& x : v) x *= c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return UniPoly(std::move(v));
}

UniPoly UniPoly::rescale_argument(const Rational& c) const {
  std::vector<Rational> v(coeffs_);
  Rational power = 1;
  for (auto& x : v) {
    x *= power;
    power *= c;
  }
  return UniPoly(std::move(v));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / leading());
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem(coeffs_);
  const int dd = divisor.degree();
  const int nd = degree();
  if (nd < dd) return {UniPoly{}, *this};
  std::vector<Rational> quot(nd - dd + 1);
  const Rational lead = divisor.leading();
  for (int i = nd - dd; i >= 0; --i) {
    const Rational q = rem[i + dd] / lead;
    quot[i] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[i + j] -= q * divisor.coeffs_[j];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    if (i == 0 || a != 1) os << kstab::to_string(a);
    if (i >= 1) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RationalFunction RationalFunction::reduced(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) return {UniPoly{}, UniPoly::constant(1)};
  const UniPoly g = gcd(num, den);
  UniPoly n = num.divmod(g).first;
  UniPoly d = den.divmod(g).first;
  const Rational lead = d.leading();
  return {n * (Rational(1) / lead), d * (Rational(1) / lead)};
}

Rational RationalFunction::operator()(const Rational& x) const {
  const Rational d = den(x);
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "rational function evaluated at a pole");
  return num(x) / d;
}

void BiPoly::add(unsigned r_degree, unsigned k_degree, const Rational& c) {
  if (c == 0) return;
  const Key key{r_degree, k_degree};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational BiPoly::coeff(unsigned r_degree, unsigned k_degree) const {
  auto it = terms_.find({r_degree, k_degree});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BiPoly::r_degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, static_cast<int>(key.first));
  return d;
}

int BiPoly::k_degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, static_cast<int>(key.second));
  return d;
}

Rational BiPoly::operator()(const Rational& r, const Rational& k) const {
  Rational acc = 0;
  for (const auto& [key, c] : terms_) acc += c * rational_power(r, key.first) * rational_power(k, key.second);
  return acc;
}

UniPoly BiPoly::at_r(const Rational& r) const {
  std::vector<Rational> v(std::max(k_degree(), 0) + 1);
  for (const auto& [key, c] : terms_) v[key.second] += c * rational_power(r, key.first);
  return UniPoly(std::move(v));
}

UniPoly interpolate(const std::vector<Sample>& samples, unsigned degree) {
  const std::size_t m = degree + 1;
  if (samples.size() < m) {
    throw Error(ErrorKind::InvalidInput, "interpolation needs " + std::to_string(m) + " samples, got " +
                                             std::to_string(samples.size()));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i].x == samples[j].x) throw Error(ErrorKind::InvalidInput, "repeated sample argument");
    }
  }
  // Divided-difference table, computed in place.
  std::vector<Rational> dd(m);
  for (std::size_t i = 0; i < m; ++i) dd[i] = samples[i].y;
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (samples[i].x - samples[i - level].x);
    }
  }
  // Expand the Newton form with Horner steps.
  UniPoly p = UniPoly::constant(dd[m - 1]);
  for (std::size_t i = m - 1; i-- > 0;) {
    p = p * UniPoly::linear_root(samples[i].x) + UniPoly::constant(dd[i]);
  }
  for (std::size_t i = m; i < samples.size(); ++i) {
    const Rational got = p(samples[i].x);
    if (got != samples[i].y) {
      throw Error(ErrorKind::InconsistentSamples, "degree-" + std::to_string(degree) + " fit predicts " +
                                                      kstab::to_string(got) + " at x=" +
                                                      kstab::to_string(samples[i].x) + " but the sample is " +
                                                      kstab::to_string(samples[i].y));
    }
  }
  return p;
}

std::vector<UniPoly> extract_e_coefficients(const BiPoly& wtilde, unsigned n) {
  if (wtilde.k_degree() > static_cast<int>(n + 1)) {
    throw Error(ErrorKind::DegreeOverflow, "k-degree " + std::to_string(wtilde.k_degree()) + " exceeds n+1 = " +
                                               std::to_string(n + 1));
  }
  std::vector<std::vector<Rational>> dense(n + 1);
  for (const auto& [key, c] : wtilde.terms()) {
    if (key.second == 0) throw Error(ErrorKind::InvalidInput, "weight polynomial has a k^0 term");
    auto& row = dense[key.second - 1];
    if (row.size() <= key.first) row.resize(key.first + 1);
    row[key.first] = c;
  }
  std::vector<UniPoly> out;
  out.reserve(n + 1);
  for (auto& row : dense) out.emplace_back(std::move(row));
  return out;
}

BiPoly assemble_e_coefficients(const std::vector<UniPoly>& e) {
  BiPoly out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int j = 0; j <= e[i].degree(); ++j) out.add(j, i + 1, e[i].coeff(j));
  }
  return out;
}

Rational leading_coefficient(const UniPoly& p, int expected_degree) {
  if (p.degree() > expected_degree) {
    throw Error(ErrorKind::DegreeOverflow, "degree " + std::to_string(p.degree()) + " exceeds expected " +
                                               std::to_string(expected_degree));
  }
  return expected_degree < 0 ? Rational(0) : p.coeff(static_cast<unsigned>(expected_degree));
}

namespace {

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    auto rem = chain[chain.size() - 2].divmod(chain.back()).second;
    chain.push_back(-rem);
  }
  chain.pop_back();
  return chain;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int variations_at(const std::vector<UniPoly>& chain, const std::optional<Rational>& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(x ? sgn(q(*x)) : sgn(q.leading()));
  return sign_changes(signs);
}

bool satisfies(const Rational& v, SignCondition cond) {
  switch (cond) {
    case SignCondition::Positive: return v > 0;
    case SignCondition::NonNegative: return v >= 0;
    case SignCondition::Negative: return v < 0;
    case SignCondition::NonPositive: return v <= 0;
  }
  return false;
}

}  // namespace

int count_real_roots(const UniPoly& p, const Rational& a, const std::optional<Rational>& b) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidInput, "root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  // Distinct roots: work with the square-free part.
  const UniPoly sf = p.divmod(gcd(p, p.derivative())).first;
  const auto chain = sturm_chain(sf);
  return variations_at(chain, a) - variations_at(chain, b);
}

std::optional<Integer> eventual_threshold(const UniPoly& p, SignCondition cond, const Integer& floor_value) {
  if (p.is_zero()) {
    if (cond == SignCondition::NonNegative || cond == SignCondition::NonPositive) return floor_value;
    return std::nullopt;
  }
  const int lead_sign = sgn(p.leading());
  const bool wants_positive = cond == SignCondition::Positive || cond == SignCondition::NonNegative;
  if ((lead_sign > 0) != wants_positive) return std::nullopt;
  if (p.degree() == 0) return floor_value;

  // Cauchy bound: every real root is strictly below 1 + max |a_i / a_n|.
  Rational bound = 0;
  for (int i = 0; i < p.degree(); ++i) bound = std::max(bound, Rational(abs(p.coeff(i) / p.leading())));
  Integer hi = ceil(bound) + 1;
  if (hi < floor_value) hi = floor_value;

  // Least integer t in [floor_value, hi] with no roots in (t, +inf).
  Integer lo = floor_value;
  Integer top = hi;
  while (lo < top) {
    Integer mid = lo + (top - lo) / 2;
    if (count_real_roots(p, Rational(mid), std::nullopt) == 0) top = mid;
    else lo = mid + 1;
  }
  // Every integer above lo satisfies the strict sign; scan down for the
  // largest failure.
  for (Integer m = lo; m >= floor_value; --m) {
    if (!satisfies(p(Rational(m)), cond)) return Integer(m + 1);
  }
  return floor_value;
}

}  // namespace kstab
