#include "kstab/hull.hpp"

#include <algorithm>
#include <bit>

#include "kstab/error.hpp"

namespace kstab {

void make_primitive(std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0 || g == 1) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::vector<Integer> to_primitive_integers(const std::vector<Rational>& v) {
  const Integer l = common_denominator(v);
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(Integer(x * l));
  make_primitive(out);
  return out;
}

namespace {

// Row reduction in place; returns the pivot column of each nonzero row.
std::vector<int> rref(std::vector<std::vector<Rational>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int cols = static_cast<int>(m[0].size());
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

using Bits = std::vector<std::uint64_t>;

struct Ray {
  std::vector<Integer> z;
  Bits zero;
};

bool subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

int popcount(const Bits& a) {
  int c = 0;
  for (auto w : a) c += std::popcount(w);
  return c;
}

// Extreme rays of the pointed cone {z : row . z >= 0 for all rows}. The rows
// must span the whole space.
std::vector<Ray> double_description(const std::vector<std::vector<Integer>>& rows, int dim) {
  const std::size_t words = (rows.size() + 63) / 64;
  auto set_bit = [](Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); };

  // Greedy choice of dim independent rows.
  std::vector<std::size_t> init;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t i = 0; i < rows.size() && static_cast<int>(init.size()) < dim; ++i) {
    auto trial = basis;
    trial.emplace_back(rows[i].begin(), rows[i].end());
    if (matrix_rank(trial) > static_cast<int>(basis.size())) {
      basis.emplace_back(rows[i].begin(), rows[i].end());
      init.push_back(i);
    }
  }
  if (static_cast<int>(init.size()) < dim) {
    throw Error(ErrorKind::InvalidInput, "cone is not pointed (constraints do not span the space)");
  }

  // Rays of the simplicial start cone are the columns of the inverse.
  std::vector<std::vector<Rational>> aug(dim, std::vector<Rational>(2 * dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) aug[i][j] = rows[init[i]][j];
    aug[i][dim + i] = 1;
  }
  rref(aug);
  std::vector<Ray> rays;
  for (int j = 0; j < dim; ++j) {
    std::vector<Rational> col(dim);
    for (int i = 0; i < dim; ++i) col[i] = aug[i][dim + j];
    Ray r{to_primitive_integers(col), Bits(words, 0)};
    for (int i = 0; i < dim; ++i) {
      if (i != j) set_bit(r.zero, init[i]);
    }
    rays.push_back(std::move(r));
  }

  std::vector<bool> used(rows.size(), false);
  for (auto i : init) used[i] = true;
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (used[c]) continue;
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(rows[c], rays[k].z);
      const int s = sgn(val[k]);
      if (s > 0) pos.push_back(k);
      if (s < 0) neg.push_back(k);
    }
    if (neg.empty()) {
      for (std::size_t k = 0; k < rays.size(); ++k) {
        if (val[k] == 0) set_bit(rays[k].zero, c);
      }
      continue;
    }
    std::vector<Ray> next;
    for (auto p : pos) {
      for (auto n : neg) {
        Bits common(words);
        for (std::size_t w = 0; w < words; ++w) common[w] = rays[p].zero[w] & rays[n].zero[w];
        if (popcount(common) < dim - 2) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k != p && k != n && subset(common, rays[k].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray r;
        r.z.resize(dim);
        for (int j = 0; j < dim; ++j) r.z[j] = val[p] * rays[n].z[j] - val[n] * rays[p].z[j];
        make_primitive(r.z);
        r.zero = std::move(common);
        set_bit(r.zero, c);
        next.push_back(std::move(r));
      }
    }
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] > 0) next.push_back(std::move(rays[k]));
      else if (val[k] == 0) {
        set_bit(rays[k].zero, c);
        next.push_back(std::move(rays[k]));
      }
    }
    rays = std::move(next);
  }
  return rays;
}

}  // namespace

std::vector<std::vector<Integer>> cone_extreme_rays(const std::vector<std::vector<Integer>>& rows, int dim) {
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != dim) throw Error(ErrorKind::DimensionMismatch, "cone constraint length");
  }
  std::vector<std::vector<Integer>> out;
  for (auto& r : double_description(rows, dim)) out.push_back(std::move(r.z));
  std::sort(out.begin(), out.end());
  return out;
}

int matrix_rank(std::vector<std::vector<Rational>> rows) {
  return static_cast<int>(rref(rows).size());
}

int affine_rank(const std::vector<Point>& points) {
  if (points.empty()) return -1;
  std::vector<std::vector<Rational>> diff;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Rational> d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diff.push_back(std::move(d));
  }
  return matrix_rank(std::move(diff));
}

Hull convex_hull(std::vector<Point> points, int ambient_dim) {
  Hull h;
  h.ambient_dim = ambient_dim;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != ambient_dim) {
      throw Error(ErrorKind::DimensionMismatch, "point of wrong dimension in hull input");
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) return h;

  const Point& p0 = points[0];
  std::vector<std::vector<Rational>> diff;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Rational> d(ambient_dim);
    for (int j = 0; j < ambient_dim; ++j) d[j] = points[i][j] - p0[j];
    diff.push_back(std::move(d));
  }
  const auto pivots = rref(diff);
  const int k = static_cast<int>(pivots.size());
  h.affine_dim = k;

  // Affine hull equations from the null space of the difference matrix.
  for (int f = 0; f < ambient_dim; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Rational> c(ambient_dim);
    c[f] = 1;
    for (int r = 0; r < k; ++r) c[pivots[r]] = -diff[r][f];
    Halfspace e{to_primitive_integers(c), 0};
    e.offset = dot(e.normal, p0);
    h.equations.push_back(std::move(e));
  }

  if (k == 0) {
    h.vertices = {p0};
    return h;
  }

  std::vector<std::vector<Integer>> rows;
  for (const auto& p : points) {
    std::vector<Integer> row(k + 1);
    for (int j = 0; j < k; ++j) row[j] = -p[pivots[j]];
    row[k] = 1;
    rows.push_back(std::move(row));
  }
  const auto rays = double_description(rows, k + 1);

  std::vector<std::vector<Integer>> projected;  // facet normals in pivot coordinates
  for (const auto& r : rays) {
    bool nonzero = false;
    for (int j = 0; j < k; ++j) nonzero = nonzero || r.z[j] != 0;
    if (!nonzero) continue;
    Halfspace f{std::vector<Integer>(ambient_dim, 0), r.z[k]};
    for (int j = 0; j < k; ++j) f.normal[pivots[j]] = r.z[j];
    h.facets.push_back(std::move(f));
  }
  std::sort(h.facets.begin(), h.facets.end(), [](const Halfspace& a, const Halfspace& b) {
    return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
  });

  for (const auto& p : points) {
    std::vector<std::vector<Rational>> tight;
    for (const auto& f : h.facets) {
      if (dot(f.normal, p) == f.offset) tight.emplace_back(f.normal.begin(), f.normal.end());
    }
    if (matrix_rank(std::move(tight)) == k) h.vertices.push_back(p);
  }
  for (const auto& f : h.facets) {
    std::vector<int> on;
    for (std::size_t v = 0; v < h.vertices.size(); ++v) {
      if (dot(f.normal, h.vertices[v]) == f.offset) on.push_back(static_cast<int>(v));
    }
    h.facet_vertices.push_back(std::move(on));
  }
  return h;
}

std::vector<RationalPoint> vertices_of_inequalities(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "inequality system shape");
  if (a.empty()) throw Error(ErrorKind::InvalidInput, "empty inequality system");
  const int n = static_cast<int>(a[0].size());
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (static_cast<int>(a[i].size()) != n) throw Error(ErrorKind::DimensionMismatch, "ragged inequality rows");
    std::vector<Rational> row(n + 1);
    for (int j = 0; j < n; ++j) row[j] = -a[i][j];
    row[n] = b[i];
    rows.push_back(to_primitive_integers(row));
  }
  std::vector<Integer> homog(n + 1, 0);
  homog[n] = 1;
  rows.push_back(homog);

  std::vector<RationalPoint> out;
  for (const auto& r : double_description(rows, n + 1)) {
    if (r.z[n] == 0) throw Error(ErrorKind::InvalidInput, "inequality system is unbounded");
    RationalPoint v(n);
    for (int j = 0; j < n; ++j) v[j] = Rational(r.z[j], r.z[n]);
    for (auto& x : v) x.canonicalize();
    out.push_back(std::move(v));
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, "inequality system is infeasible");
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kstab
