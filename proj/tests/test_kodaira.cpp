#include "kstab/invariants.hpp"
#include "kstab/kodaira.hpp"
#include "kstab/sampling.hpp"
#include "test_util.hpp"

using namespace kstab;
using namespace testutil;

namespace {

LatticePolytope rect(int a, int b) { return product(segment(0, a), segment(0, b)); }

Rational toric_mu(const LatticePolytope& p) {
  auto tc = make_test_configuration({p, std::nullopt}, PLConvexFunction::constant(p.ambient_dim(), 0), 1);
  return toric_df_inputs(tc).mu;
}

}  // namespace

TEST_CASE("embedding threshold examples") {
  SUBCASE("projective plane") {
    const auto t = embedding_threshold(poly(2, {{0, 0}, {1, 0}, {0, 1}}));
    CHECK(t.k_min == 6);
    CHECK(t.epsilon == q(1, 6));
    CHECK(t.k_hat_bound == 6);
    CHECK(t.nef_bound == 1);
    REQUIRE(t.certificate.combination.size() == 1);
    // (1 + k^/2) L at k = 6
    CHECK(t.certificate.combination[0].second == q(3, 2));
  }
  SUBCASE("P1 with O(2)") {
    const auto t = embedding_threshold(segment(0, 2));
    CHECK(t.k_min == 4);
    CHECK(t.epsilon == q(1, 2));
  }
  SUBCASE("-K not proportional to L") {
    const auto p = rect(1, 2);
    CHECK(kind_of([&] { embedding_threshold(p, std::nullopt, 40); }) == ErrorKind::NefCertificateUnavailable);
    NefOracle o = NefOracle::toric(p);
    o.add_polytope("H1", product(segment(0, 1), single_point(pt({0}))));
    o.add_polytope("H2", product(single_point(pt({0})), segment(0, 1)));
    const auto t = embedding_threshold(p, o, 40);
    CHECK(t.k_min == 6);
    CHECK(t.nef_bound == 1);
  }
  SUBCASE("non-simple moment polytope is refused by the nef check") {
    const auto pyramid = poly(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    NefOracle o = NefOracle::toric(pyramid);
    CHECK(kind_of([&] { o.add_polytope("P", pyramid); }) == ErrorKind::InvalidInput);
  }
}

TEST_CASE("epsilon is the proof constant") {
  for (const auto& p : {segment(0, 1), segment(0, 5), rect(1, 1), rect(2, 3), poly(2, {{0, 0}, {2, 0}, {0, 2}})}) {
    const int n = p.ambient_dim();
    NefOracle o = NefOracle::toric(p);
    if (n == 2 && p.vertices().size() == 3) {
      o.add_polytope("H", poly(2, {{0, 0}, {1, 0}, {0, 1}}));
    } else if (n == 2) {
      o.add_polytope("H1", product(segment(0, 1), single_point(pt({0}))));
      o.add_polytope("H2", product(single_point(pt({0})), segment(0, 1)));
    } else {
      o.add_polytope("pt", segment(0, 1));
    }
    const auto t = embedding_threshold(p, o, 200);
    CHECK(t.epsilon == Rational(1) / (n * (n + 1)));
    CHECK(t.k_min >= t.k_hat_bound);
    CHECK(t.k_min >= t.nef_bound);
  }
}

TEST_CASE("more generators never raise the threshold") {
  // table mode on a rank-2 Picard group: L = (1, 2), K = (-2, -2)
  const ClassVector L{1, 2}, K{-2, -2};
  const Rational mu = q(3, 2);
  std::vector<std::pair<std::string, ClassVector>> gens{
      {"L", L}, {"A", {Rational(1), Rational(1)}}, {"H1", {Rational(1), Rational(0)}}, {"H2", {Rational(0), Rational(1)}}};
  std::optional<unsigned> last;
  NefOracle o(2);
  for (const auto& [name, g] : gens) {
    o.add_generator(name, g);
    std::optional<unsigned> k;
    try {
      k = embedding_threshold(2, mu, L, K, o, 60).k_min;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NefCertificateUnavailable);
    }
    if (last) {
      REQUIRE(k.has_value());
      CHECK(*k <= *last);
    }
    if (k) last = k;
  }
  CHECK(last.has_value());
}

TEST_CASE("nef certificates") {
  NefOracle o(2);
  o.add_generator("a", {Rational(1), Rational(0)});
  o.add_generator("b", {Rational(1), Rational(1)});
  const auto c = o.certify({Rational(3), Rational(1)});
  REQUIRE(c.has_value());
  Rational x = 0, y = 0;
  for (const auto& [name, coef] : c->combination) {
    CHECK(coef >= 0);
    x += coef;
    if (name == "b") y += coef;
  }
  CHECK(x == 3);
  CHECK(y == 1);
  CHECK_FALSE(o.certify({Rational(0), Rational(1)}).has_value());
  CHECK(o.certify({Rational(0), Rational(0)}).has_value());

  // toric relations: on P1 both boundary points are the same class
  NefOracle t = NefOracle::toric(segment(0, 3));
  t.add_generator("p", {Rational(1), Rational(0)});
  CHECK(t.certify({Rational(0), Rational(2)}).has_value());
  CHECK_FALSE(t.certify({Rational(-1), Rational(0)}).has_value());
}

TEST_CASE("family threshold") {
  SUBCASE("projective plane") {
    const ChernNumbers c{2, {1, -3, 9}};
    const auto [num, den] = family_slope(c);
    for (int m = 7; m <= 20; ++m) CHECK(num(Rational(m)) / den(Rational(m)) == Rational(3) / (m - 6));
    const auto f = family_threshold(c, 12, 1);
    CHECK(f.m_min == 9);
    REQUIRE(f.k_min.size() == 4);
    // mu(9) = 1: k^/2 > 1 + 2/3
    CHECK(f.k_min[0] == std::pair<unsigned, unsigned>{9, 21});
    CHECK(family_threshold(c, 40, 15).m_min == 15);
  }
  SUBCASE("Calabi-Yau numbers") {
    const auto f = family_threshold({2, {2, 0, 0}}, 5, 1);
    CHECK(f.m_min == 1);
    for (const auto& [m, k] : f.k_min) CHECK(k == 13);
  }
  SUBCASE("cap below the threshold") {
    CHECK(kind_of([] { family_threshold({2, {1, -3, 9}}, 8, 1); }) == ErrorKind::NoThresholdBelowCap);
  }
  SUBCASE("agrees with the toric slope of mL + 2K") {
    // P1 x P1 with L = O(a, b), K = O(-2, -2)
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        const ChernNumbers c{2, {Rational(2 * a * b), Rational(-2 * a - 2 * b), Rational(8)}};
        const auto [num, den] = family_slope(c);
        for (int m = 5; m <= 8; ++m) CHECK(num(Rational(m)) / den(Rational(m)) == toric_mu(rect(m * a - 4, m * b - 4)));
      }
    }
  }
  SUBCASE("bad input") {
    CHECK(kind_of([] { family_slope({2, {1, 2}}); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { family_slope({2, {0, 2, 1}}); }) == ErrorKind::InvalidInput);
  }
}

TEST_CASE("J plus relative canonical term is DF") {
  SUBCASE("zero canonical term") {
    const auto d = j_df_decomposition(q(5, 3), 0, true);
    CHECK(d.df == q(5, 3));
    CHECK_FALSE(d.warning.has_value());
  }
  SUBCASE("toric flag ideals") {
    SeededRng rng(13);
    for (int t = 0; t < 12; ++t) {
      const int n = 1 + t % 2;
      ToricPolarisedPair pair{n == 1 ? segment(0, 2) : rect(2, 2), std::nullopt};
      if (t % 3 == 0) pair.twist = n == 1 ? segment(0, 1) : product(segment(0, 1), single_point(pt({0})));
      const auto tc = semiample_configuration(pair, random_flag_ideal(rng, n, 2, 3, 3));
      const auto [j, rel] = toric_j_and_relative_canonical(tc);
      CHECK(rel >= 0);  // toric varieties are log canonical
      const auto d = j_df_decomposition(j, rel, true);
      CHECK_FALSE(d.warning.has_value());
      CHECK(d.df == df_route_factor(n) * df_from_coefficients(hilbert_weight_data(tc)));
    }
  }
  SUBCASE("negative discrepancy is flagged, not thrown") {
    const auto d = j_df_decomposition(1, -2, true);
    CHECK(d.df == -1);
    CHECK(d.warning.has_value());
    CHECK_FALSE(j_df_decomposition(1, -2, false).warning.has_value());
  }
  SUBCASE("J-unstable input destabilizes") {
    const auto d = j_df_decomposition(-3, 1, true);
    CHECK(d.df < 0);
    CHECK(verdict({{d.df, 1}}, std::nullopt).kind == VerdictKind::DestabilizedBy);
  }
}
