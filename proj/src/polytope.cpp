#include "kstab/polytope.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>

#include "kstab/error.hpp"

namespace kstab {

namespace {

using i128 = __int128;

std::int64_t to_i64(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::InvalidInput, std::string(what) + " exceeds 64-bit range");
  return z.get_si();
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// Constraints a.x <= b for the lattice scan of rP, in machine integers.
struct Scan {
  int d = 0;
  std::vector<std::vector<std::int64_t>> a;
  std::vector<i128> b;
  std::vector<std::int64_t> lo, hi;
};

Scan make_scan(const LatticePolytope& p, const Integer& r) {
  Scan s;
  s.d = p.ambient_dim();
  auto add = [&](const std::vector<Integer>& normal, const Integer& offset, bool negate) {
    std::vector<std::int64_t> row;
    for (const auto& x : normal) row.push_back(to_i64(negate ? Integer(-x) : x, "facet normal"));
    s.a.push_back(std::move(row));
    const Integer rhs = (negate ? Integer(-offset) : offset) * r;
    s.b.push_back(static_cast<i128>(to_i64(rhs, "facet offset")));
  };
  for (const auto& f : p.facets()) add(f.normal, f.offset, false);
  for (const auto& e : p.equations()) {
    add(e.normal, e.offset, false);
    add(e.normal, e.offset, true);
  }
  s.lo.assign(s.d, std::numeric_limits<std::int64_t>::max());
  s.hi.assign(s.d, std::numeric_limits<std::int64_t>::min());
  for (const auto& v : p.vertices()) {
    for (int j = 0; j < s.d; ++j) {
      const std::int64_t x = to_i64(v[j] * r, "vertex coordinate");
      s.lo[j] = std::min(s.lo[j], x);
      s.hi[j] = std::max(s.hi[j], x);
    }
  }
  return s;
}

// Walks the box over the first d-1 coordinates and reports, for each prefix,
// the exact interval of admissible values of the last coordinate.
template <class F>
void scan_intervals(const Scan& s, F&& on_interval) {
  const int d = s.d;
  const std::size_t m = s.a.size();
  std::vector<std::int64_t> x(d, 0);
  std::vector<std::vector<i128>> partial(d, std::vector<i128>(m, 0));
  std::function<void(int)> rec = [&](int level) {
    if (level == d - 1) {
      i128 lo = s.lo[d - 1], hi = s.hi[d - 1];
      for (std::size_t j = 0; j < m && lo <= hi; ++j) {
        const i128 c = s.a[j][d - 1];
        const i128 rhs = s.b[j] - partial[level][j];
        if (c > 0) hi = std::min(hi, floor_div(rhs, c));
        else if (c < 0) lo = std::max(lo, ceil_div(rhs, c));
        else if (rhs < 0) hi = lo - 1;
      }
      if (lo <= hi) on_interval(x, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi));
      return;
    }
    for (std::int64_t v = s.lo[level]; v <= s.hi[level]; ++v) {
      x[level] = v;
      for (std::size_t j = 0; j < m; ++j) partial[level + 1][j] = partial[level][j] + i128(s.a[j][level]) * v;
      rec(level + 1);
    }
  };
  rec(0);
}

Integer to_integer(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  Integer out = hi * Integer("18446744073709551616") + lo;
  return neg ? Integer(-out) : out;
}

// |det| of an integer square matrix by Bareiss elimination.
Integer abs_det(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sgn_flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sgn_flip = -sgn_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  Integer det = m[n - 1][n - 1];
  return abs(det);
}

int subset_rank(const std::vector<Point>& verts, const std::vector<int>& idx) {
  std::vector<Point> pts;
  for (int i : idx) pts.push_back(verts[i]);
  return affine_rank(pts);
}

// Pulling triangulation: faces of conv(S) are read off the global facets.
void pull(const LatticePolytope& p, const std::vector<int>& s, int k, std::vector<int>& chain,
          const std::function<void(const std::vector<int>&)>& emit) {
  if (k == 0) {
    chain.push_back(s[0]);
    emit(chain);
    chain.pop_back();
    return;
  }
  const int apex = s[0];
  std::vector<std::vector<int>> faces;
  for (const auto& fv : p.facet_vertices()) {
    std::vector<int> t;
    std::set_intersection(s.begin(), s.end(), fv.begin(), fv.end(), std::back_inserter(t));
    if (t.empty() || std::binary_search(t.begin(), t.end(), apex)) continue;
    if (static_cast<int>(t.size()) < k) continue;
    if (std::find(faces.begin(), faces.end(), t) != faces.end()) continue;
    if (subset_rank(p.vertices(), t) != k - 1) continue;
    faces.push_back(std::move(t));
  }
  chain.push_back(apex);
  for (const auto& t : faces) pull(p, t, k - 1, chain, emit);
  chain.pop_back();
}

}  // namespace

LatticePolytope LatticePolytope::from_points(int ambient_dim, std::vector<Point> points) {
  if (ambient_dim <= 0) throw Error(ErrorKind::InvalidInput, "ambient dimension must be positive");
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "polytope needs at least one point");
  LatticePolytope p;
  p.hull_ = convex_hull(std::move(points), ambient_dim);
  return p;
}

bool LatticePolytope::contains(const Point& x, const Integer& r) const {
  if (static_cast<int>(x.size()) != ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  auto dot = [&](const std::vector<Integer>& a) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
  };
  for (const auto& e : equations()) {
    if (dot(e.normal) != e.offset * r) return false;
  }
  for (const auto& f : facets()) {
    if (dot(f.normal) > f.offset * r) return false;
  }
  return true;
}

LatticePolytope LatticePolytope::dilate(const Integer& r) const {
  if (r < 0) throw Error(ErrorKind::InvalidInput, "negative dilation");
  std::vector<Point> pts = vertices();
  for (auto& v : pts)
    for (auto& x : v) x *= r;
  return from_points(ambient_dim(), std::move(pts));
}

LatticePolytope LatticePolytope::translate(const Point& shift) const {
  if (static_cast<int>(shift.size()) != ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "shift dimension");
  std::vector<Point> pts = vertices();
  for (auto& v : pts)
    for (int j = 0; j < ambient_dim(); ++j) v[j] += shift[j];
  return from_points(ambient_dim(), std::move(pts));
}

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "Minkowski sum of different dimensions");
  std::vector<Point> pts;
  for (const auto& u : a.vertices()) {
    for (const auto& v : b.vertices()) {
      Point w(u.size());
      for (std::size_t j = 0; j < u.size(); ++j) w[j] = u[j] + v[j];
      pts.push_back(std::move(w));
    }
  }
  return LatticePolytope::from_points(a.ambient_dim(), std::move(pts));
}

LatticePolytope product(const LatticePolytope& a, const LatticePolytope& b) {
  std::vector<Point> pts;
  for (const auto& u : a.vertices()) {
    for (const auto& v : b.vertices()) {
      Point w = u;
      w.insert(w.end(), v.begin(), v.end());
      pts.push_back(std::move(w));
    }
  }
  return LatticePolytope::from_points(a.ambient_dim() + b.ambient_dim(), std::move(pts));
}

LatticePolytope segment(const Integer& lo, const Integer& hi) {
  return LatticePolytope::from_points(1, {Point{lo}, Point{hi}});
}

LatticePolytope single_point(const Point& p) {
  return LatticePolytope::from_points(static_cast<int>(p.size()), {p});
}

Integer lattice_count(const LatticePolytope& p, const Integer& r) {
  if (r < 0) throw Error(ErrorKind::InvalidInput, "negative dilation");
  if (r == 0) return 1;
  const Scan s = make_scan(p, r);
  i128 total = 0;
  scan_intervals(s, [&](const std::vector<std::int64_t>&, std::int64_t lo, std::int64_t hi) {
    total += i128(hi) - lo + 1;
  });
  return to_integer(total);
}

void for_each_lattice_point(const LatticePolytope& p, const Integer& r,
                            const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  if (r < 0) throw Error(ErrorKind::InvalidInput, "negative dilation");
  if (r == 0) {
    fn(std::vector<std::int64_t>(p.ambient_dim(), 0));
    return;
  }
  const Scan s = make_scan(p, r);
  scan_intervals(s, [&](const std::vector<std::int64_t>& prefix, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> x = prefix;
    for (std::int64_t v = lo; v <= hi; ++v) {
      x.back() = v;
      fn(x);
    }
  });
}

UniPoly ehrhart(const LatticePolytope& p) {
  const int d = p.dim();
  std::vector<Sample> samples;
  for (int r = 1; r <= d + 3; ++r) samples.push_back({r, Rational(lattice_count(p, r))});
  UniPoly e = interpolate(samples, d);
  if (e(0) != 1) {
    throw Error(ErrorKind::InconsistentSamples, "Ehrhart fit has constant term " + to_string(e(0)));
  }
  return e;
}

Rational volume(const LatticePolytope& p) {
  if (!p.full_dimensional()) {
    throw Error(ErrorKind::TriangulationFailure, "volume of a lower-dimensional polytope");
  }
  const int d = p.ambient_dim();
  std::vector<int> all(p.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  Integer total = 0;
  std::vector<int> chain;
  std::size_t simplices = 0;
  pull(p, all, d, chain, [&](const std::vector<int>& simplex) {
    std::vector<std::vector<Integer>> m;
    const Point& v0 = p.vertices()[simplex[0]];
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      std::vector<Integer> row(d);
      for (int j = 0; j < d; ++j) row[j] = p.vertices()[simplex[i]][j] - v0[j];
      m.push_back(std::move(row));
    }
    const Integer det = abs_det(std::move(m));
    if (det == 0) throw Error(ErrorKind::TriangulationFailure, "degenerate simplex in triangulation");
    total += det;
    ++simplices;
  });
  if (simplices == 0) throw Error(ErrorKind::TriangulationFailure, "empty triangulation");
  return make_rational(total, factorial(d));
}

Rational volume_or_zero(const LatticePolytope& p) {
  return p.full_dimensional() ? volume(p) : Rational(0);
}

Rational relative_lattice_volume(const LatticePolytope& p) {
  return ehrhart(p).coeff(static_cast<unsigned>(p.dim()));
}

Rational mixed_volume(const std::vector<LatticePolytope>& polytopes) {
  if (polytopes.empty()) throw Error(ErrorKind::DimensionMismatch, "mixed volume of no polytopes");
  const int d = polytopes[0].ambient_dim();
  if (static_cast<int>(polytopes.size()) != d) {
    throw Error(ErrorKind::DimensionMismatch, "mixed volume needs exactly " + std::to_string(d) + " polytopes, got " +
                                                  std::to_string(polytopes.size()));
  }
  for (const auto& q : polytopes) {
    if (q.ambient_dim() != d) throw Error(ErrorKind::DimensionMismatch, "mixed volume inputs in different dimensions");
  }
  const unsigned full = (1u << d);
  std::vector<LatticePolytope> sums(full);
  Rational acc = 0;
  for (unsigned mask = 1; mask < full; ++mask) {
    const unsigned low = mask & (~mask + 1);
    const int i = std::countr_zero(low);
    sums[mask] = (mask == low) ? polytopes[i] : minkowski_sum(sums[mask ^ low], polytopes[i]);
    const int size = std::popcount(mask);
    const Rational v = volume_or_zero(sums[mask]);
    if ((d - size) % 2 == 0) acc += v;
    else acc -= v;
  }
  return acc / Rational(factorial(d));
}

Rational intersection_number(const std::vector<LatticePolytope>& polytopes) {
  const Rational v = mixed_volume(polytopes);
  return v * Rational(factorial(static_cast<unsigned>(polytopes.size())));
}

PLConvexFunction::PLConvexFunction(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorKind::InvalidInput, "PL function needs at least one piece");
  for (const auto& pc : pieces_) {
    if (pc.linear.size() != pieces_[0].linear.size()) throw Error(ErrorKind::DimensionMismatch, "ragged PL pieces");
  }
  std::sort(pieces_.begin(), pieces_.end(), [](const AffinePiece& a, const AffinePiece& b) {
    return a.linear != b.linear ? a.linear < b.linear : a.constant < b.constant;
  });
  // Equal linear parts: only the largest constant matters.
  std::vector<AffinePiece> kept;
  for (auto& pc : pieces_) {
    if (!kept.empty() && kept.back().linear == pc.linear) kept.back() = pc;
    else kept.push_back(pc);
  }
  pieces_ = std::move(kept);
}

PLConvexFunction PLConvexFunction::constant(int dim, const Rational& c) {
  return PLConvexFunction({AffinePiece{std::vector<Rational>(dim, 0), c}});
}

int PLConvexFunction::dim() const { return pieces_.empty() ? 0 : static_cast<int>(pieces_[0].linear.size()); }

Rational PLConvexFunction::operator()(const RationalPoint& x) const {
  if (static_cast<int>(x.size()) != dim()) throw Error(ErrorKind::DimensionMismatch, "PL function argument");
  Rational best;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Rational v = pieces_[i].constant;
    for (std::size_t j = 0; j < x.size(); ++j) v += pieces_[i].linear[j] * x[j];
    if (i == 0 || v > best) best = v;
  }
  return best;
}

Rational PLConvexFunction::dilated(const std::vector<std::int64_t>& x, const Integer& r) const {
  Rational best;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Rational v = pieces_[i].constant * r;
    for (std::size_t j = 0; j < x.size(); ++j) v += pieces_[i].linear[j] * Rational(static_cast<long>(x[j]));
    if (i == 0 || v > best) best = v;
  }
  return best;
}

namespace {

// Inequalities of P in the form A x <= b (equations doubled), padded with
// `extra` zero columns.
void polytope_rows(const LatticePolytope& p, int extra, std::vector<std::vector<Rational>>& a,
                   std::vector<Rational>& b) {
  auto push = [&](const std::vector<Integer>& normal, const Integer& off, int sgn) {
    std::vector<Rational> row;
    for (const auto& x : normal) row.emplace_back(sgn * x);
    row.resize(row.size() + extra, 0);
    a.push_back(std::move(row));
    b.emplace_back(sgn * off);
  };
  for (const auto& f : p.facets()) push(f.normal, f.offset, 1);
  for (const auto& e : p.equations()) {
    push(e.normal, e.offset, 1);
    push(e.normal, e.offset, -1);
  }
}

// Points (x, f(x)) for the vertices x of the linearity cells of f on P.
std::vector<RationalPoint> cell_vertices(const LatticePolytope& p, const PLConvexFunction& f) {
  const int n = p.ambient_dim();
  if (f.dim() != n) throw Error(ErrorKind::DimensionMismatch, "PL function and polytope dimensions differ");
  Rational top;
  bool first = true;
  for (const auto& v : p.vertices()) {
    RationalPoint x(v.begin(), v.end());
    const Rational fx = f(x);
    if (first || fx > top) top = fx;
    first = false;
  }
  top += 1;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  polytope_rows(p, 1, a, b);
  for (const auto& pc : f.pieces()) {  // piece(x) - t <= 0
    std::vector<Rational> row = pc.linear;
    row.push_back(-1);
    a.push_back(std::move(row));
    b.push_back(-pc.constant);
  }
  std::vector<Rational> cap(n + 1, 0);
  cap[n] = 1;
  a.push_back(cap);
  b.push_back(top);
  std::vector<RationalPoint> out;
  for (auto& v : vertices_of_inequalities(a, b)) {
    if (v[n] < top) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

PLConvexFunction PLConvexFunction::irredundant_on(const LatticePolytope& p) const {
  // A piece is kept when it attains the maximum at some cell vertex; every
  // cell that is nonempty has one.
  std::vector<AffinePiece> kept;
  const auto cells = cell_vertices(p, *this);
  for (const auto& pc : pieces_) {
    bool attained = false;
    for (const auto& c : cells) {
      Rational v = pc.constant;
      for (std::size_t j = 0; j < pc.linear.size(); ++j) v += pc.linear[j] * c[j];
      if (v == c.back()) {
        attained = true;
        break;
      }
    }
    if (attained) kept.push_back(pc);
  }
  return PLConvexFunction(std::move(kept));
}

std::pair<Rational, Rational> range_on(const LatticePolytope& p, const PLConvexFunction& f) {
  const auto cells = cell_vertices(p, f);
  Rational lo = cells[0].back(), hi = cells[0].back();
  for (const auto& c : cells) {
    lo = std::min(lo, c.back());
    hi = std::max(hi, c.back());
  }
  return {lo, hi};
}

GraphPolytope graph_polytope(const LatticePolytope& p, const PLConvexFunction& f, const Rational& R) {
  const int n = p.ambient_dim();
  const auto cells = cell_vertices(p, f);
  for (const auto& c : cells) {
    if (c.back() < 0 || c.back() > R) {
      throw Error(ErrorKind::FunctionOutOfRange, "f takes the value " + to_string(c.back()) +
                                                     " on P, outside [0, " + to_string(R) + "]");
    }
  }
  std::vector<RationalPoint> pts;
  for (const auto& v : p.vertices()) {
    RationalPoint x(v.begin(), v.end());
    x.push_back(0);
    pts.push_back(std::move(x));
  }
  for (auto c : cells) {
    c.back() = R - c.back();
    pts.push_back(std::move(c));
  }
  std::vector<Rational> flat;
  for (const auto& q : pts) flat.insert(flat.end(), q.begin(), q.end());
  const Integer s = common_denominator(flat);
  std::vector<Point> ipts;
  for (const auto& q : pts) {
    Point z;
    for (const auto& x : q) z.emplace_back(Integer(x * s));
    ipts.push_back(std::move(z));
  }
  return GraphPolytope{LatticePolytope::from_points(n + 1, std::move(ipts)), s};
}

}  // namespace kstab
