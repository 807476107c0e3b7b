#include "kstab/sampling.hpp"

#include "kstab/error.hpp"

namespace kstab {

std::int64_t SeededRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidInput, "empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

Rational SeededRng::rational(std::int64_t num_bound, std::int64_t den_bound) {
  return make_rational(Integer(static_cast<long>(uniform(-num_bound, num_bound))),
                       Integer(static_cast<long>(uniform(1, den_bound))));
}

MonomialFlagIdeal random_flag_ideal(SeededRng& rng, int n, int max_exponent, unsigned max_N, int gens) {
  MonomialFlagIdeal ideal;
  const unsigned N = static_cast<unsigned>(rng.uniform(1, max_N));
  const int count = static_cast<int>(rng.uniform(1, gens));
  for (int g = 0; g < count; ++g) {
    FlagGenerator gen;
    bool zero = true;
    for (int k = 0; k < n; ++k) {
      gen.exponent.emplace_back(static_cast<long>(rng.uniform(0, max_exponent)));
      zero = zero && gen.exponent.back() == 0;
    }
    if (zero) gen.exponent[rng.uniform(0, n - 1)] = 1;
    // I_0 != 0: otherwise t divides the ideal and E contains a whole fibre.
    gen.t_power = g == 0 ? 0 : static_cast<unsigned>(rng.uniform(0, N - 1));
    ideal.generators.push_back(std::move(gen));
  }
  ideal.generators.push_back({Point(n, Integer(0)), N});
  return ideal;
}

ToricTestConfiguration semiample_configuration(const ToricPolarisedPair& pair, const MonomialFlagIdeal& ideal,
                                               unsigned r_start, unsigned r_cap) {
  for (unsigned r = r_start;; ++r) {
    // every generator must be a section of L^r, else f stays positive on rP
    bool inside = true;
    for (const auto& g : ideal.generators) inside = inside && pair.polytope.contains(g.exponent, Integer(r));
    if (!inside) {
      if (r >= r_cap) throw Error(ErrorKind::NotSemiample, "generators not inside r P below the cap");
      continue;
    }
    try {
      return from_flag_ideal(pair, ideal, r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotSemiample || r >= r_cap) throw;
    }
  }
}

}  // namespace kstab
