#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kstab/hull.hpp"
#include "kstab/poly.hpp"

namespace kstab {

/// Convex hull of finitely many lattice points, stored by its irredundant
/// vertex list together with the H-representation.
class LatticePolytope {
 public:
  LatticePolytope() = default;
  /// Hull of arbitrary (possibly redundant) points; throws InvalidInput on an
  /// empty list and DimensionMismatch on ragged input.
  static LatticePolytope from_points(int ambient_dim, std::vector<Point> points);

  int ambient_dim() const { return hull_.ambient_dim; }
  int dim() const { return hull_.affine_dim; }
  bool full_dimensional() const { return hull_.affine_dim == hull_.ambient_dim; }
  const std::vector<Point>& vertices() const { return hull_.vertices; }
  const std::vector<Halfspace>& facets() const { return hull_.facets; }
  const std::vector<Halfspace>& equations() const { return hull_.equations; }
  const std::vector<std::vector<int>>& facet_vertices() const { return hull_.facet_vertices; }

  /// x in rP.
  bool contains(const Point& x, const Integer& r = 1) const;
  LatticePolytope dilate(const Integer& r) const;
  LatticePolytope translate(const Point& shift) const;

  bool operator==(const LatticePolytope& o) const { return vertices() == o.vertices(); }

 private:
  Hull hull_;
};

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b);
/// a x b in ambient_dim(a) + ambient_dim(b).
LatticePolytope product(const LatticePolytope& a, const LatticePolytope& b);
/// The segment [lo, hi] in dimension one.
LatticePolytope segment(const Integer& lo, const Integer& hi);
LatticePolytope single_point(const Point& p);

/// |rP ∩ Z^d|. r = 0 gives 1.
Integer lattice_count(const LatticePolytope& p, const Integer& r);

/// Calls fn on every lattice point of rP, in lexicographic order.
void for_each_lattice_point(const LatticePolytope& p, const Integer& r,
                            const std::function<void(const std::vector<std::int64_t>&)>& fn);

/// Ehrhart polynomial of degree dim(P), fitted on r = 1..dim+1 and checked at
/// r = dim+2, dim+3 and r = 0.
UniPoly ehrhart(const LatticePolytope& p);

/// Euclidean volume by pulling triangulation; TriangulationFailure when P is
/// not full-dimensional.
Rational volume(const LatticePolytope& p);

/// Same, but returns 0 on lower-dimensional input.
Rational volume_or_zero(const LatticePolytope& p);

/// Volume measured in the lattice of the affine span (Ehrhart leading
/// coefficient); a lattice segment of length l has l, a point has 1.
Rational relative_lattice_volume(const LatticePolytope& p);

/// Normalized mixed volume with V(P,...,P) = vol(P).
Rational mixed_volume(const std::vector<LatticePolytope>& polytopes);

/// d! V(P_1,...,P_d): the intersection number of the nef toric classes.
Rational intersection_number(const std::vector<LatticePolytope>& polytopes);

struct AffinePiece {
  std::vector<Rational> linear;
  Rational constant;
  bool operator==(const AffinePiece& o) const { return linear == o.linear && constant == o.constant; }
};

/// max over pieces of <linear, x> + constant.
class PLConvexFunction {
 public:
  PLConvexFunction() = default;
  explicit PLConvexFunction(std::vector<AffinePiece> pieces);
  static PLConvexFunction constant(int dim, const Rational& c);

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  int dim() const;
  Rational operator()(const RationalPoint& x) const;
  /// r f(x / r), for a lattice point x of rP.
  Rational dilated(const std::vector<std::int64_t>& x, const Integer& r) const;
  /// Drops pieces that are nowhere maximal on P.
  PLConvexFunction irredundant_on(const LatticePolytope& p) const;
  bool is_affine() const { return pieces_.size() <= 1; }

 private:
  std::vector<AffinePiece> pieces_;
};

/// Q = {(x,t) : x in P, 0 <= t <= R - f(x)}, stored as the lattice polytope
/// scale * Q with the least positive integer scale making it integral.
struct GraphPolytope {
  LatticePolytope polytope;
  Integer scale;
};

GraphPolytope graph_polytope(const LatticePolytope& p, const PLConvexFunction& f, const Rational& R);

/// Minimum and maximum of f over P (exact).
std::pair<Rational, Rational> range_on(const LatticePolytope& p, const PLConvexFunction& f);

}  // namespace kstab
