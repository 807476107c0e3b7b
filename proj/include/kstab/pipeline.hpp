#pragma once

#include <optional>
#include <string>

#include "kstab/invariants.hpp"
#include "kstab/torictc.hpp"

namespace kstab {

std::string to_string(NormRoute r);
NormRoute parse_norm_route(const std::string& name);

/// Minimum norm of a toric configuration by one route, from its own inputs.
Rational toric_norm(const ToricTestConfiguration& tc, NormRoute route);

struct ToricDFReport {
  HilbertWeightData hilbert;
  ToricDFInputs inputs;
  Rational df_coefficients;   // r^{2n} route
  Rational df_intersection;   // facet / mixed volume route
  Rational norm_intersection, norm_odaka, norm_b0;
  bool routes_agree = false;  // df_intersection == factor * df_coefficients, all norms equal
  bool trivial = false;
  Verdict verdict;
};

ToricDFReport toric_df_report(const ToricTestConfiguration& tc);

}  // namespace kstab
