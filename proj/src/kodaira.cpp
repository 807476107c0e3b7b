#include "kstab/kodaira.hpp"

#include <algorithm>
#include <numeric>

#include "kstab/error.hpp"
#include "kstab/invariants.hpp"

namespace kstab {

namespace {

// Solves sum_j x_j cols[j] = rhs when the columns are independent; nullopt if
// they are dependent or the system is inconsistent.
std::optional<std::vector<Rational>> solve_columns(const std::vector<ClassVector>& cols, const ClassVector& rhs) {
  const std::size_t rows = rhs.size(), k = cols.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = cols[j][i];
    a[i][k] = rhs[i];
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_row(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t p = r;
    while (p < rows && a[p][j] == 0) ++p;
    if (p == rows) return std::nullopt;  // dependent columns
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][j] == 0) continue;
      const Rational f = a[i][j] / a[r][j];
      for (std::size_t c = j; c <= k; ++c) a[i][c] -= f * a[r][c];
    }
    pivot_row[j] = r++;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][k] != 0) return std::nullopt;
  std::vector<Rational> x(k);
  for (std::size_t j = 0; j < k; ++j) x[j] = a[pivot_row[j]][k] / a[pivot_row[j]][j];
  return x;
}

Rational dot(const Point& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

ClassVector combine(const Rational& a, const ClassVector& x, const Rational& b, const ClassVector& y) {
  ClassVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

Rational toric_slope(const LatticePolytope& p) {
  const auto tc = make_test_configuration({p, std::nullopt}, PLConvexFunction::constant(p.ambient_dim(), 0), 1);
  return toric_df_inputs(tc).mu;
}

}  // namespace

NefOracle::NefOracle(std::size_t dim, std::vector<ClassVector> relations) : dim_(dim), relations_(std::move(relations)) {
  for (const auto& r : relations_)
    if (r.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "relation of wrong length");
}

NefOracle NefOracle::toric(const LatticePolytope& p) {
  if (!p.full_dimensional()) throw Error(ErrorKind::InvalidInput, "moment polytope must be full-dimensional");
  const auto& facets = p.facets();
  std::vector<ClassVector> rel;
  for (int j = 0; j < p.ambient_dim(); ++j) {
    ClassVector v;
    for (const auto& f : facets) v.push_back(-Rational(f.normal[j]));
    rel.push_back(v);
  }
  NefOracle o(facets.size(), rel);
  o.polytope_ = p;
  return o;
}

void NefOracle::add_generator(const std::string& name, ClassVector g) {
  if (g.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "generator of wrong length");
  generators_.emplace_back(name, std::move(g));
}

ClassVector NefOracle::divisor_of(const LatticePolytope& q) const {
  if (!polytope_) throw Error(ErrorKind::InvalidInput, "divisor_of needs a toric oracle");
  if (q.ambient_dim() != polytope_->ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "polytope dimension");
  ClassVector h;
  for (const auto& f : polytope_->facets()) {
    Integer best = 0;
    bool first = true;
    for (const auto& v : q.vertices()) {
      Integer s = 0;
      for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * f.normal[i];
      if (first || s > best) best = s;
      first = false;
    }
    h.emplace_back(best);
  }
  return h;
}

ClassVector NefOracle::canonical() const {
  if (!polytope_) throw Error(ErrorKind::InvalidInput, "canonical class needs a toric oracle");
  return ClassVector(dim_, Rational(-1));
}

void NefOracle::add_polytope(const std::string& name, const LatticePolytope& q) {
  const ClassVector h = divisor_of(q);
  const LatticePolytope& p = *polytope_;
  const int n = p.ambient_dim();
  const auto& facets = p.facets();
  // D_h is nef iff the vertex m_v cut out by the facets through each vertex v
  // of P satisfies every inequality <m, n_i> <= h_i.
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    std::vector<std::size_t> through;
    for (std::size_t i = 0; i < facets.size(); ++i) {
      const auto& fv = p.facet_vertices()[i];
      if (std::find(fv.begin(), fv.end(), static_cast<int>(v)) != fv.end()) through.push_back(i);
    }
    if (static_cast<int>(through.size()) != n) throw Error(ErrorKind::InvalidInput, "nef check needs a simple polytope");
    std::vector<ClassVector> cols(n, ClassVector(n));
    ClassVector rhs(n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) cols[c][r] = Rational(facets[through[r]].normal[c]);
      rhs[r] = h[through[r]];
    }
    const auto m = solve_columns(cols, rhs);
    if (!m) throw Error(ErrorKind::InvalidInput, "singular vertex cone");
    for (std::size_t i = 0; i < facets.size(); ++i) {
      if (dot(facets[i].normal, *m) > h[i]) throw Error(ErrorKind::InvalidInput, "polytope " + name + " is not nef on P");
    }
  }
  add_generator(name, h);
}

std::optional<NefCertificate> NefOracle::certify(const ClassVector& c) const {
  if (c.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "class of wrong length");
  // Caratheodory: some linearly independent subset of generators (together
  // with the relations) carries a nonnegative representation.
  const std::size_t g = generators_.size();
  const std::size_t max_size = std::min(g, dim_);
  std::vector<std::size_t> subset;
  std::optional<NefCertificate> found;
  auto attempt = [&]() {
    std::vector<ClassVector> cols = relations_;
    for (auto i : subset) cols.push_back(generators_[i].second);
    const auto x = solve_columns(cols, c);
    if (!x) return false;
    NefCertificate cert;
    for (std::size_t j = 0; j < subset.size(); ++j) {
      const Rational& coef = (*x)[relations_.size() + j];
      if (coef < 0) return false;
      if (coef != 0) cert.combination.emplace_back(generators_[subset[j]].first, coef);
    }
    found = cert;
    return true;
  };
  // subsets in order of size, then lexicographically: deterministic output
  for (std::size_t size = 0; size <= max_size; ++size) {
    std::vector<bool> mask(g, false);
    std::fill(mask.begin(), mask.begin() + size, true);
    do {
      subset.clear();
      for (std::size_t i = 0; i < g; ++i)
        if (mask[i]) subset.push_back(i);
      if (attempt()) return found;
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return std::nullopt;
}

EmbeddingThreshold embedding_threshold(int n, const Rational& mu, const ClassVector& L, const ClassVector& K,
                                       const NefOracle& oracle, unsigned k_cap) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be positive");
  EmbeddingThreshold out;
  out.epsilon = Rational(1) / (n * (n + 1));
  out.k_hat_bound = static_cast<unsigned>(2 * (n + 1));
  auto candidate = [&](unsigned k) {
    const Rational k_hat = Rational(k) / (2 * (n + 1));
    return combine(k_hat / n - Rational(n) * mu / (n + 1), L, -1, K);
  };
  for (unsigned k = 1; k <= k_cap; ++k) {
    const ClassVector c = candidate(k);
    auto cert = oracle.certify(c);
    if (!cert) continue;
    if (out.nef_bound == 0) out.nef_bound = k;
    if (k >= out.k_hat_bound) {
      out.k_min = k;
      out.candidate = c;
      out.certificate = *cert;
      return out;
    }
  }
  throw Error(ErrorKind::NefCertificateUnavailable,
              "no k <= " + std::to_string(k_cap) + " has a certified nef class (this is not instability)");
}

EmbeddingThreshold embedding_threshold(const LatticePolytope& p, const std::optional<NefOracle>& oracle,
                                       unsigned k_cap) {
  NefOracle o = oracle ? *oracle : NefOracle::toric(p);
  if (!o.toric_mode()) throw Error(ErrorKind::InvalidInput, "toric pair needs a toric oracle");
  const ClassVector L = o.divisor_of(p);
  if (!oracle) o.add_generator("L", L);
  return embedding_threshold(p.ambient_dim(), toric_slope(p), L, o.canonical(), o, k_cap);
}

void ChernNumbers::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be positive");
  if (values.size() != static_cast<std::size_t>(n + 1))
    throw Error(ErrorKind::DimensionMismatch, "need n+1 Chern numbers");
  if (values[0] <= 0) throw Error(ErrorKind::InvalidInput, "L^n must be positive");
}

std::pair<UniPoly, UniPoly> family_slope(const ChernNumbers& c) {
  c.validate();
  const int n = c.n;
  // (mL + 2K)^n = sum_j C(n,j) m^{n-j} 2^j L^{n-j} K^j
  std::vector<Rational> den(n + 1), num(n);
  for (int j = 0; j <= n; ++j)
    den[n - j] = Rational(binomial(n, j)) * rational_power(2, j) * c.values[j];
  // -K.(mL + 2K)^{n-1}
  for (int j = 0; j <= n - 1; ++j)
    num[n - 1 - j] = -Rational(binomial(n - 1, j)) * rational_power(2, j) * c.values[j + 1];
  return {UniPoly(num), UniPoly(den)};
}

FamilyThreshold family_threshold(const ChernNumbers& c, unsigned m_cap, unsigned m_floor) {
  if (m_floor == 0) throw Error(ErrorKind::InvalidInput, "very-ample floor must be positive");
  if (m_cap < m_floor) throw Error(ErrorKind::InvalidInput, "cap below the very-ample floor");
  FamilyThreshold out;
  std::tie(out.num, out.den) = family_slope(c);
  const auto pos = eventual_threshold(out.den, SignCondition::Positive, Integer(m_floor));
  const auto le1 = eventual_threshold(out.den - out.num, SignCondition::NonNegative, Integer(m_floor));
  if (!pos || !le1) throw Error(ErrorKind::NoThresholdBelowCap, "mu(mL+2K) <= 1 never holds eventually");
  const Integer m_min = std::max(*pos, *le1);
  if (m_min > m_cap) {
    throw Error(ErrorKind::NoThresholdBelowCap, "mu(mL+2K) <= 1 first holds from m = " + m_min.get_str() +
                                                    ", above the cap " + std::to_string(m_cap));
  }
  out.m_min = static_cast<unsigned>(m_min.get_ui());
  const int n = c.n;
  for (unsigned m = out.m_min; m <= m_cap; ++m) {
    const Rational mu = out.num(Rational(m)) / out.den(Rational(m));
    // k^/n > 1 + n mu/(n+1) with k^ = k/(2(n+1)), and k^ >= 1
    const Rational bound = Rational(2 * n * (n + 1)) * (1 + Rational(n) * mu / (n + 1));
    Integer k = floor(bound) + 1;
    k = std::max(k, Integer(2 * (n + 1)));
    out.k_min.emplace_back(m, static_cast<unsigned>(k.get_ui()));
  }
  return out;
}

JDFDecomposition j_df_decomposition(const Rational& j_value, const Rational& relative_canonical, bool log_canonical) {
  JDFDecomposition out;
  out.df = j_value + relative_canonical;
  if (log_canonical && relative_canonical < 0)
    out.warning = "NegativeDiscrepancy: relative canonical term " + to_string(relative_canonical) +
                  " < 0 for a log canonical variety";
  return out;
}

std::pair<Rational, Rational> toric_j_and_relative_canonical(const ToricTestConfiguration& tc) {
  const auto in = toric_df_inputs(tc);
  const Rational gamma = (in.KLn1 + in.TLn1) / in.Ln;
  return {j_functional(gamma, in.Lnp1, in.LKX + in.LT, tc.n()), in.LK - in.LKX};
}

}  // namespace kstab
