#include "kstab/torictc.hpp"

#include <algorithm>

#include "kstab/error.hpp"

namespace kstab {

namespace {

Rational pow_int(const Integer& s, unsigned e) { return rational_power(Rational(s), e); }

LatticePolytope with_zero_height(const LatticePolytope& p) {
  return product(p, single_point(Point{Integer(0)}));
}

LatticePolytope twist_or_origin(const ToricTestConfiguration& tc) {
  if (tc.pair.twist) return *tc.pair.twist;
  return single_point(Point(tc.n(), Integer(0)));
}

// Mixed volume with `count` copies of a and the rest b.
Rational mixed_with_copies(const LatticePolytope& a, int count, const LatticePolytope& b) {
  std::vector<LatticePolytope> args(count, a);
  args.push_back(b);
  return mixed_volume(args);
}

// vertical_only: facets whose normal has zero last coordinate
Rational facet_lattice_volume_sum(const LatticePolytope& p, bool vertical_only = false) {
  Rational sum = 0;
  for (std::size_t k = 0; k < p.facet_vertices().size(); ++k) {
    if (vertical_only && p.facets()[k].normal.back() != 0) continue;
    std::vector<Point> pts;
    for (int i : p.facet_vertices()[k]) pts.push_back(p.vertices()[i]);
    sum += relative_lattice_volume(LatticePolytope::from_points(p.ambient_dim(), pts));
  }
  return sum;
}

// Fits p(x, y) of degree <= dx in x and <= dy in y from values on the grid
// x = 0..nx-1, y = ystep * (0..ny-1); extra grid points are verification.
BiPoly fit_grid(const std::vector<std::vector<Rational>>& values, unsigned dx, unsigned dy, unsigned ystep) {
  const std::size_t nx = values.size();
  std::vector<UniPoly> in_y;
  for (std::size_t i = 0; i < nx; ++i) {
    std::vector<Sample> s;
    for (std::size_t j = 0; j < values[i].size(); ++j) s.push_back({Rational(j * ystep), values[i][j]});
    in_y.push_back(interpolate(s, dy));
  }
  BiPoly out;
  for (unsigned b = 0; b <= dy; ++b) {
    std::vector<Sample> s;
    for (std::size_t i = 0; i < nx; ++i) s.push_back({Rational(i), in_y[i].coeff(b)});
    const UniPoly c = interpolate(s, dx);
    for (int a = 0; a <= c.degree(); ++a) out.add(a, b, c.coeff(a));
  }
  return out;
}

}  // namespace

void ToricPolarisedPair::validate() const {
  if (!polytope.full_dimensional()) {
    throw Error(ErrorKind::InvalidInput, "moment polytope must be full-dimensional");
  }
  if (twist && twist->ambient_dim() != polytope.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "twist polytope lives in dimension " +
                                                  std::to_string(twist->ambient_dim()) + ", expected " +
                                                  std::to_string(polytope.ambient_dim()));
  }
}

LatticePolytope ToricTestConfiguration::working_polytope() const { return pair.polytope.dilate(exponent); }

ToricTestConfiguration make_test_configuration(ToricPolarisedPair pair, const PLConvexFunction& f, const Rational& R,
                                               unsigned exponent) {
  pair.validate();
  if (exponent == 0) throw Error(ErrorKind::InvalidInput, "exponent must be positive");
  if (f.dim() != pair.n()) throw Error(ErrorKind::DimensionMismatch, "PL function dimension differs from polytope");
  ToricTestConfiguration tc{std::move(pair), f, R, exponent};
  const LatticePolytope work = tc.working_polytope();
  graph_polytope(work, f, R);  // range check
  tc.f = f.irredundant_on(work);
  return tc;
}

bool is_trivial(const ToricTestConfiguration& tc) {
  const auto [lo, hi] = range_on(tc.working_polytope(), tc.f);
  return lo == hi;
}

unsigned MonomialFlagIdeal::N() const {
  unsigned n = 0;
  for (const auto& g : generators) n = std::max(n, g.t_power);
  return n;
}

void MonomialFlagIdeal::validate(int n) const {
  if (generators.empty()) throw Error(ErrorKind::InvalidInput, "flag ideal has no generators");
  bool pure = false;
  for (const auto& g : generators) {
    if (static_cast<int>(g.exponent.size()) != n) {
      throw Error(ErrorKind::DimensionMismatch, "flag ideal exponent of wrong dimension");
    }
    bool zero = true;
    for (const auto& x : g.exponent) {
      if (x < 0) throw Error(ErrorKind::InvalidInput, "negative exponent in flag ideal");
      zero = zero && x == 0;
    }
    if (zero && g.t_power == N()) pure = true;
  }
  if (!pure) throw Error(ErrorKind::InvalidInput, "flag ideal must contain the pure power t^N");
}

PLConvexFunction newton_envelope(const MonomialFlagIdeal& ideal, int n) {
  ideal.validate(n);
  // Valid inequalities u.m + w t >= c of the Newton polyhedron, as a cone in
  // (u, w, c).
  const int dim = n + 2;
  std::vector<std::vector<Integer>> rows;
  for (int k = 0; k <= n; ++k) {
    std::vector<Integer> row(dim, 0);
    row[k] = 1;
    rows.push_back(std::move(row));
  }
  for (const auto& g : ideal.generators) {
    std::vector<Integer> row(g.exponent.begin(), g.exponent.end());
    row.emplace_back(g.t_power);
    row.emplace_back(-1);
    rows.push_back(std::move(row));
  }
  std::vector<AffinePiece> pieces;
  for (const auto& z : cone_extreme_rays(rows, dim)) {
    const Integer& w = z[n];
    if (w <= 0) continue;
    AffinePiece pc;
    for (int k = 0; k < n; ++k) pc.linear.push_back(make_rational(-z[k], w));
    pc.constant = make_rational(z[n + 1], w);
    pieces.push_back(std::move(pc));
  }
  return PLConvexFunction(std::move(pieces));
}

ToricTestConfiguration from_flag_ideal(const ToricPolarisedPair& pair, const MonomialFlagIdeal& ideal, unsigned r) {
  pair.validate();
  if (r == 0) throw Error(ErrorKind::InvalidInput, "exponent must be positive");
  const int n = pair.n();
  bool origin = false;
  for (const auto& v : pair.polytope.vertices()) {
    bool zero = true;
    for (const auto& x : v) {
      if (x < 0) throw Error(ErrorKind::InvalidInput, "flag ideals need P inside the nonnegative orthant");
      zero = zero && x == 0;
    }
    origin = origin || zero;
  }
  if (!origin) throw Error(ErrorKind::InvalidInput, "flag ideals need the origin as a vertex of P");
  const PLConvexFunction g = newton_envelope(ideal, n);
  const Rational R(ideal.N());
  const auto gp = graph_polytope(pair.polytope.dilate(r), g, R);
  if (gp.scale != 1) {
    throw Error(ErrorKind::NotSemiample, "rL - E is not semi-ample at r = " + std::to_string(r) +
                                             " (graph polytope has denominators " + to_string(gp.scale) + ")");
  }
  return make_test_configuration(pair, g, R, r);
}

Integer integral_scale(const ToricTestConfiguration& tc) {
  const auto gp = graph_polytope(tc.working_polytope(), tc.f, tc.R);
  Integer s;
  mpz_lcm(s.get_mpz_t(), gp.scale.get_mpz_t(), tc.R.get_den().get_mpz_t());
  return s;
}

LatticePolytope scaled_graph(const ToricTestConfiguration& tc) {
  const auto gp = graph_polytope(tc.working_polytope(), tc.f, tc.R);
  const Integer s = integral_scale(tc);
  return gp.polytope.dilate(s / gp.scale);
}

UniPoly weight_polynomial(const ToricTestConfiguration& tc) {
  const unsigned n = tc.n();
  const Integer s = integral_scale(tc);
  const LatticePolytope q = scaled_graph(tc);
  const LatticePolytope p = tc.working_polytope().dilate(s);
  std::vector<Sample> samples;
  for (unsigned j = 1; j <= n + 4; ++j) {
    samples.push_back({Rational(j), Rational(lattice_count(q, j) - lattice_count(p, j))});
  }
  const UniPoly in_j = interpolate(samples, n + 1);
  std::vector<Rational> c(n + 2);
  for (unsigned i = 0; i <= n + 1; ++i) c[i] = in_j.coeff(i) / pow_int(s, i);
  return UniPoly(std::move(c));
}

HilbertWeightData hilbert_weight_data(const ToricTestConfiguration& tc) {
  const unsigned n = tc.n();
  HilbertWeightData d;
  d.n = static_cast<int>(n);
  d.r_exponent = tc.exponent;
  const UniPoly h = ehrhart(tc.working_polytope());
  d.a0 = h.coeff(n);
  d.a1 = h.coeff(n - 1);
  const UniPoly w = weight_polynomial(tc);
  d.b0 = w.coeff(n + 1);
  d.b1 = w.coeff(n);
  const auto in = toric_df_inputs(tc);
  // The twist shifts K to K + T' in both a1 and b1.
  d.a_q = -in.TLn1 / Rational(2 * factorial(n - 1));
  d.b_q = -in.LT / Rational(2 * factorial(n));
  return d;
}

BiPoly bivariate_weight_oracle(const ToricTestConfiguration& tc, unsigned r_max, unsigned k_max) {
  const unsigned n = tc.n();
  if (r_max < 2 * n + 2 || k_max < 2 * (n + 2)) {
    throw Error(ErrorKind::InvalidInput, "bivariate oracle needs r_max >= " + std::to_string(2 * n + 2) +
                                             " and k_max >= " + std::to_string(2 * (n + 2)));
  }
  const Integer s = integral_scale(tc);
  const LatticePolytope q = scaled_graph(tc);
  const LatticePolytope p = tc.working_polytope().dilate(s);
  const LatticePolytope pt = twist_or_origin(tc);
  const LatticePolytope pt0 = with_zero_height(pt);
  const unsigned kk = k_max / 2;

  // values[j][k'] = w~(S j, 2 k')
  std::vector<std::vector<Rational>> values(r_max + 1);
  for (unsigned j = 0; j <= r_max; ++j) {
    const Integer hhat = lattice_count(p, j);
    const Integer what = lattice_count(q, j) - hhat;
    const LatticePolytope hp = minkowski_sum(p.dilate(2 * j), pt);
    const LatticePolytope wp = minkowski_sum(q.dilate(2 * j), pt0);
    for (unsigned k = 0; k <= kk; ++k) {
      const Integer h = lattice_count(hp, k);
      const Integer w = lattice_count(wp, k) - h;
      values[j].emplace_back(w * hhat - what * Integer(2 * k) * h);
    }
  }
  const BiPoly grid = fit_grid(values, 2 * n + 1, n + 1, 2);
  BiPoly out;
  for (const auto& [key, c] : grid.terms()) out.add(key.first, key.second, c / pow_int(s, key.first));
  return out;
}

namespace {

// f == R everywhere flattens Q_f. Those numbers come from R + 1 instead,
// using L_R = L_{R+1} - F and F.F = 0.
bool flat_graph(const ToricTestConfiguration& tc) { return !scaled_graph(tc).full_dimensional(); }

ToricTestConfiguration raised(const ToricTestConfiguration& tc) {
  ToricTestConfiguration up = tc;
  up.R += 1;
  return up;
}

}  // namespace

NormData norm_data(const ToricTestConfiguration& tc) {
  const unsigned n = tc.n();
  if (flat_graph(tc)) {
    NormData out = norm_data(raised(tc));
    const Rational Ln = Rational(factorial(n)) * volume(tc.working_polytope());
    out.Lnp1 -= Rational(n + 1) * Ln;
    out.LdotL -= Rational(n) * Ln;
    return out;
  }
  const Integer s = integral_scale(tc);
  const LatticePolytope q = scaled_graph(tc);
  const LatticePolytope p = tc.working_polytope();
  const LatticePolytope q0 = product(p.dilate(s), segment(0, Integer(tc.R * s)));
  NormData out;
  const Rational fact_np1(factorial(n + 1));
  out.Lnp1 = fact_np1 * volume(q) / pow_int(s, n + 1);
  out.LdotL = fact_np1 * mixed_with_copies(q, n, q0) / pow_int(s, n + 1) -
              tc.R * Rational(factorial(n)) * volume(p);
  return out;
}

Rational b0_tilde(const ToricTestConfiguration& tc) {
  const unsigned n = tc.n();
  const Integer s = integral_scale(tc);
  const LatticePolytope q = scaled_graph(tc);
  const LatticePolytope p0 = with_zero_height(tc.working_polytope().dilate(s));
  std::vector<std::vector<Rational>> values(n + 3);
  for (unsigned l = 0; l <= n + 2; ++l) {
    for (unsigned u = 0; u <= n + 2; ++u) {
      values[l].emplace_back(lattice_count(minkowski_sum(q.dilate(l), p0.dilate(u)), 1));
    }
  }
  const BiPoly fit = fit_grid(values, n + 1, n + 1, 1);
  // l^n coefficient of p(l,0) - p(l,-1), undoing the scale S in both slots.
  Rational acc = 0;
  for (const auto& [key, c] : fit.terms()) {
    if (key.first != n || key.second == 0) continue;
    const Rational term = c / pow_int(s, key.first + key.second);
    if (key.second % 2 == 1) acc += term;
    else acc -= term;
  }
  return acc;
}

ToricDFInputs toric_df_inputs(const ToricTestConfiguration& tc) {
  const unsigned n = tc.n();
  if (flat_graph(tc)) {
    ToricDFInputs in = toric_df_inputs(raised(tc));
    in.Lnp1 -= Rational(n + 1) * in.Ln;
    in.LK -= Rational(n) * in.KLn1;
    in.LKX -= Rational(n) * in.KLn1;
    in.LT -= Rational(n) * in.TLn1;
    return in;
  }
  const Integer s = integral_scale(tc);
  const LatticePolytope q = scaled_graph(tc);
  const LatticePolytope p = tc.working_polytope();
  const Rational fn(factorial(n)), fn1(factorial(n - 1)), fnp1(factorial(n + 1));
  ToricDFInputs in;
  const Rational vol_p = volume(p);
  in.Ln = fn * vol_p;
  in.KLn1 = -fn1 * facet_lattice_volume_sum(p);
  in.TLn1 = 0;
  in.LT = 0;
  if (tc.pair.twist) {
    in.TLn1 = fn * mixed_with_copies(p, n - 1, *tc.pair.twist);
    in.LT = fnp1 * mixed_with_copies(q, n, with_zero_height(*tc.pair.twist)) / pow_int(s, n);
  }
  in.mu = -(in.KLn1 + in.TLn1) / in.Ln;
  in.Lnp1 = fnp1 * volume(q) / pow_int(s, n + 1);
  in.LK = -fn * facet_lattice_volume_sum(q) / pow_int(s, n) + 2 * fn * vol_p;
  // K_X pulls back to minus the facets of Q lying over facets of P
  in.LKX = -fn * facet_lattice_volume_sum(q, true) / pow_int(s, n);
  return in;
}

}  // namespace kstab
