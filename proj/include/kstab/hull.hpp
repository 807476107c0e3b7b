#pragma once

#include <cstdint>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

using Point = std::vector<Integer>;
using RationalPoint = std::vector<Rational>;

/// normal . x <= offset (inequality) or normal . x == offset (equation).
struct Halfspace {
  std::vector<Integer> normal;
  Integer offset;
};

struct Hull {
  int ambient_dim = 0;
  int affine_dim = -1;  // -1 for the empty set
  std::vector<Point> vertices;
  std::vector<Halfspace> equations;
  std::vector<Halfspace> facets;
  /// Indices into `vertices` of the vertices on each facet.
  std::vector<std::vector<int>> facet_vertices;
};

/// Exact convex hull of integer points in any small dimension. Lower
/// dimensional inputs are handled by computing the affine hull first.
Hull convex_hull(std::vector<Point> points, int ambient_dim);

/// Vertices of the bounded polyhedron {x : A x <= b} (rational data). Throws
/// InvalidInput when the system is unbounded or infeasible.
std::vector<RationalPoint> vertices_of_inequalities(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b);

/// Extreme rays (primitive integer vectors) of the pointed cone
/// {z : row . z >= 0 for every row}. The rows must span the space.
std::vector<std::vector<Integer>> cone_extreme_rays(const std::vector<std::vector<Integer>>& rows, int dim);

/// Rank of a rational matrix given by rows.
int matrix_rank(std::vector<std::vector<Rational>> rows);

/// Affine dimension of a point set (-1 when empty).
int affine_rank(const std::vector<Point>& points);

/// Divides an integer vector by the gcd of its entries (no-op on zero).
void make_primitive(std::vector<Integer>& v);

/// Clears denominators row-wise and returns the primitive integer vector.
std::vector<Integer> to_primitive_integers(const std::vector<Rational>& v);

}  // namespace kstab
