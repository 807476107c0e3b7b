#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kstab/intersect.hpp"
#include "kstab/torictc.hpp"

namespace kstab {

/// Table of (d)! V(...) over all degree-d multisets of the named lattice
/// polytopes (all in ambient dimension d). `divisors[i]` divides every entry
/// once per occurrence of class i, so a polytope stored at scale S stands for
/// the class of (1/S) of it.
IntersectionTable toric_table(const std::vector<std::pair<std::string, LatticePolytope>>& classes,
                              const std::vector<Integer>& divisors = {});

/// Classes on the total space of a toric test configuration:
///   Lc ~ Q_f, L ~ P x 0 (pullback of L), F ~ 0 x [0,1] (a fibre),
///   E = r L + R F - Lc (the exceptional part, r = exponent),
/// plus pullbacks R x 0 of the supplied nef polytopes.
struct ToricIntersectionSetup {
  IntersectionTable table;
  ClassExpr Lc, L, F, E;
  std::vector<std::pair<std::string, ClassExpr>> nef;
  unsigned r = 1;
  int n = 1;
};

ToricIntersectionSetup toric_intersection_setup(const ToricTestConfiguration& tc,
                                                const std::vector<std::pair<std::string, LatticePolytope>>& nef = {});

/// (rL - E)^n . (L + n r^{-1} E) on the setup.
Rational odaka_value(const ToricIntersectionSetup& s);

/// The inequality suite with nef classes {L} plus the supplied ones.
InequalityReport toric_inequalities(const ToricTestConfiguration& tc,
                                    const std::vector<std::pair<std::string, LatticePolytope>>& nef = {});

}  // namespace kstab
