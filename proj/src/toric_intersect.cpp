#include "kstab/toric_intersect.hpp"

#include <functional>

#include "kstab/error.hpp"

namespace kstab {

IntersectionTable toric_table(const std::vector<std::pair<std::string, LatticePolytope>>& classes,
                              const std::vector<Integer>& divisors) {
  if (classes.empty()) throw Error(ErrorKind::InvalidInput, "toric table needs at least one class");
  const int d = classes[0].second.ambient_dim();
  for (const auto& [name, p] : classes) {
    if (p.ambient_dim() != d) throw Error(ErrorKind::DimensionMismatch, "class " + name + " in another dimension");
  }
  IntersectionTable table(d);
  const Rational fact(factorial(d));
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == d) {
      std::vector<LatticePolytope> ps;
      std::vector<std::string> names;
      Rational scale = 1;
      for (int i : pick) {
        ps.push_back(classes[i].second);
        names.push_back(classes[i].first);
        if (!divisors.empty()) scale /= Rational(divisors[i]);
      }
      table.set(names, MPoly(fact * mixed_volume(ps) * scale));
      return;
    }
    for (int i = start; i < static_cast<int>(classes.size()); ++i) {
      pick.push_back(i);
      rec(i);
      pick.pop_back();
    }
  };
  rec(0);
  return table;
}

ToricIntersectionSetup toric_intersection_setup(const ToricTestConfiguration& tc,
                                                const std::vector<std::pair<std::string, LatticePolytope>>& nef) {
  const int n = tc.n();
  const Integer s = integral_scale(tc);
  const LatticePolytope zero = single_point(Point{Integer(0)});
  std::vector<std::pair<std::string, LatticePolytope>> classes{
      {"Lc", scaled_graph(tc)},
      {"L", product(tc.pair.polytope, zero)},
      {"F", product(single_point(Point(n, Integer(0))), segment(0, 1))},
  };
  std::vector<Integer> div{s, 1, 1};
  ToricIntersectionSetup out{IntersectionTable(n + 1), {}, {}, {}, {}, {}, tc.exponent, n};
  for (const auto& [name, p] : nef) {
    if (p.ambient_dim() != n) throw Error(ErrorKind::DimensionMismatch, "nef polytope " + name + " dimension");
    if (name == "Lc" || name == "L" || name == "F") throw Error(ErrorKind::InvalidInput, "reserved class name " + name);
    classes.push_back({name, product(p, zero)});
    div.emplace_back(1);
  }
  out.table = toric_table(classes, div);
  out.Lc = ClassExpr::symbol("Lc");
  out.L = ClassExpr::symbol("L");
  out.F = ClassExpr::symbol("F");
  out.E = out.L * MPoly(Rational(tc.exponent)) + out.F * MPoly(tc.R) - out.Lc;
  for (const auto& [name, p] : nef) out.nef.push_back({name, ClassExpr::symbol(name)});
  return out;
}

Rational odaka_value(const ToricIntersectionSetup& s) {
  const Rational r(s.r);
  const ClassExpr A = s.L * MPoly(r) - s.E;
  const ClassExpr B = s.L + s.E * MPoly(Rational(s.n) / r);
  return evaluate(power_then(A, s.n, {B}), s.table).constant_term();
}

InequalityReport toric_inequalities(const ToricTestConfiguration& tc,
                                    const std::vector<std::pair<std::string, LatticePolytope>>& nef) {
  auto s = toric_intersection_setup(tc, nef);
  std::vector<std::pair<std::string, ClassExpr>> classes{{"L", s.L}};
  classes.insert(classes.end(), s.nef.begin(), s.nef.end());
  return check_inequalities(s.table, s.r, s.L, s.E, classes);
}

}  // namespace kstab
