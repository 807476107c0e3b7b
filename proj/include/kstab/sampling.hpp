#pragma once

#include <cstdint>
#include <random>

#include "kstab/torictc.hpp"

namespace kstab {

/// Seeded source for randomized checks. Draws use plain modular reduction of
/// mt19937_64 output so results do not depend on the standard library's
/// distribution implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  Rational rational(std::int64_t num_bound, std::int64_t den_bound);

 private:
  std::mt19937_64 engine_;
};

/// Random nontrivial monomial flag ideal in n variables: up to `gens`
/// generators x^a t^j with 0 <= a_i <= max_exponent, j < N, plus t^N. The
/// first generator has j = 0, so the ideal is not divisible by t.
MonomialFlagIdeal random_flag_ideal(SeededRng& rng, int n, int max_exponent, unsigned max_N, int gens);

/// from_flag_ideal at the least r in [r_start, r_cap] where every generator
/// exponent lies in rP and rL - E is semi-ample; rethrows NotSemiample past the cap.
ToricTestConfiguration semiample_configuration(const ToricPolarisedPair& pair, const MonomialFlagIdeal& ideal,
                                               unsigned r_start = 1, unsigned r_cap = 24);

}  // namespace kstab
