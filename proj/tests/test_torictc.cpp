#include "kstab/invariants.hpp"
#include "kstab/sampling.hpp"
#include "kstab/torictc.hpp"
#include "test_util.hpp"

using namespace kstab;
using namespace testutil;

namespace {

PLConvexFunction pl(std::initializer_list<std::pair<std::vector<long>, Rational>> pieces) {
  std::vector<AffinePiece> out;
  for (const auto& [lin, c] : pieces) {
    AffinePiece p;
    for (long a : lin) p.linear.push_back(Rational(a));
    p.constant = c;
    out.push_back(p);
  }
  return PLConvexFunction(out);
}

// f = max(0, 1 - x) on [0, 2], R = 1
ToricTestConfiguration p1_example(bool twisted = false) {
  ToricPolarisedPair pair{segment(0, 2), std::nullopt};
  if (twisted) pair.twist = segment(0, 1);
  return make_test_configuration(pair, pl({{{0}, 0}, {{-1}, 1}}), 1);
}

MonomialFlagIdeal ideal(std::initializer_list<std::pair<std::initializer_list<int>, unsigned>> gens) {
  MonomialFlagIdeal I;
  for (const auto& [e, t] : gens) I.generators.push_back({pt(e), t});
  return I;
}

// Oracle: W(r) = sum over x in rP' of floor(rR - f_r(x)), valid at every r
// (the count of lattice heights above each x, minus the base point).
Integer direct_weight(const ToricTestConfiguration& tc, long r) {
  Integer acc = 0;
  for_each_lattice_point(tc.working_polytope(), Integer(r), [&](const std::vector<std::int64_t>& x) {
    acc += floor(Rational(r) * tc.R - tc.f.dilated(x, Integer(r)));
  });
  return acc;
}

ToricTestConfiguration shifted(const ToricTestConfiguration& tc, const Rational& df, const Rational& dR) {
  std::vector<AffinePiece> ps = tc.f.pieces();
  for (auto& p : ps) p.constant += df;
  return make_test_configuration(tc.pair, PLConvexFunction(ps), tc.R + dR, tc.exponent);
}

ToricTestConfiguration random_config(SeededRng& rng, int n) {
  ToricPolarisedPair pair{n == 1 ? segment(0, rng.uniform(1, 3)) : square(2), std::nullopt};
  return semiample_configuration(pair, random_flag_ideal(rng, n, 2, 3, 3));
}

}  // namespace

TEST_CASE("flag ideal examples") {
  SUBCASE("(t) is a shifted trivial configuration") {
    auto tc = from_flag_ideal({segment(0, 2), std::nullopt}, ideal({{{0}, 1}}), 1);
    CHECK(is_trivial(tc));
    CHECK(tc.f({Rational(1)}) == 1);
  }
  SUBCASE("(x, t) on [0,2]") {
    auto tc = from_flag_ideal({segment(0, 2), std::nullopt}, ideal({{{1}, 0}, {{0}, 1}}), 1);
    CHECK(tc.R == 1);
    CHECK(tc.f({Rational(0)}) == 1);
    CHECK(tc.f({q(1, 2)}) == q(1, 2));
    CHECK(tc.f({Rational(1)}) == 0);
    CHECK(tc.f({Rational(2)}) == 0);
  }
  SUBCASE("(x1, x2, t) on the unit square") {
    auto tc = from_flag_ideal({square(1), std::nullopt}, ideal({{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 1}}), 1);
    CHECK(tc.f({Rational(0), Rational(0)}) == 1);
    CHECK(tc.f({q(1, 4), q(1, 4)}) == q(1, 2));
    CHECK(tc.f({Rational(1), Rational(0)}) == 0);
    CHECK(tc.f({Rational(1), Rational(1)}) == 0);
  }
  SUBCASE("generator outside rP gives a non-lattice graph") {
    const ToricPolarisedPair pair{segment(0, 1), std::nullopt};
    const auto I = ideal({{{2}, 0}, {{0}, 1}});
    CHECK(kind_of([&] { from_flag_ideal(pair, I, 1); }) == ErrorKind::NotSemiample);
    CHECK(semiample_configuration(pair, I).exponent == 2);
  }
  SUBCASE("missing pure t power is rejected") {
    CHECK(kind_of([] { ideal({{{1}, 0}}).validate(1); }) == ErrorKind::InvalidInput);
  }
}

TEST_CASE("flag ideal conversion is idempotent") {
  SeededRng rng(11);
  for (int t = 0; t < 12; ++t) {
    const int n = 1 + t % 2;
    ToricPolarisedPair pair{n == 1 ? segment(0, 2) : square(2), std::nullopt};
    const auto I = random_flag_ideal(rng, n, 2, 3, 3);
    const auto tc = semiample_configuration(pair, I);
    const auto env = newton_envelope(I, n).irredundant_on(tc.working_polytope());
    CHECK(env.pieces() == tc.f.pieces());
    const auto again = make_test_configuration(tc.pair, tc.f, tc.R, tc.exponent);
    CHECK(again.f.pieces() == tc.f.pieces());
  }
}

TEST_CASE("hilbert and weight data examples") {
  SUBCASE("trivial f = 0 on [0,2], R = 1, raw sums") {
    auto tc = make_test_configuration({segment(0, 2), std::nullopt}, PLConvexFunction::constant(1, 0), 1);
    auto d = hilbert_weight_data(tc);
    CHECK(d.a0 == 2);
    CHECK(d.a1 == 1);
    CHECK(d.b0 == 2);
    CHECK(d.b1 == 1);
    CHECK(df_from_coefficients(d) == 0);
  }
  SUBCASE("P1 example") {
    auto d = hilbert_weight_data(p1_example());
    CHECK(d.a0 == 2);
    CHECK(d.a1 == 1);
    CHECK(d.b0 == q(3, 2));
    CHECK(d.b1 == q(1, 2));
    CHECK(d.a_q == 0);
    CHECK(d.b_q == 0);
    CHECK(weight_polynomial(p1_example()) == UniPoly({Rational(0), q(1, 2), q(3, 2)}));
  }
  SUBCASE("twist [0,1] enters as a shift of the canonical coefficients") {
    auto d = hilbert_weight_data(p1_example(true));
    CHECK(d.a_q == q(-1, 2));
  }
}

TEST_CASE("weight sums are polynomial and match direct summation") {
  SeededRng rng(3);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 2;
    const auto tc = random_config(rng, n);
    const UniPoly w = weight_polynomial(tc);
    CHECK(w.degree() <= n + 1);
    const long S = integral_scale(tc).get_si();
    for (long j = 1; j <= 3; ++j) CHECK(w(Rational(S * j)) == Rational(direct_weight(tc, S * j)));
  }
}

TEST_CASE("shift covariance of weight data") {
  SeededRng rng(8);
  for (int t = 0; t < 8; ++t) {
    const auto tc = random_config(rng, 1 + t % 2);
    const Rational c = t % 3 == 0 ? q(1, 2) : Rational(t % 3);
    const auto d = hilbert_weight_data(tc);
    // raising R alone adds c per lattice point and height
    const auto e = hilbert_weight_data(shifted(tc, 0, c));
    CHECK(e.b0 == d.b0 + c * d.a0);
    CHECK(e.b1 == d.b1 + c * d.a1);
    CHECK(df_from_coefficients(e) == df_from_coefficients(d));
    // moving f and R together leaves the graph polytope alone
    const auto g = hilbert_weight_data(shifted(tc, c, c));
    CHECK(g.b0 == d.b0);
    CHECK(g.b1 == d.b1);
  }
}

TEST_CASE("bivariate oracle") {
  SUBCASE("twisted P1 example: leading coefficient of e2 over a0 is the coefficient-route DF") {
    const auto tc = p1_example(true);
    const BiPoly w = bivariate_weight_oracle(tc, 4, 6);
    const auto d = hilbert_weight_data(tc);
    CHECK(w.coeff(2, 2) / d.a0 == df_from_coefficients(d));
    CHECK(df_from_coefficients(d) == q(3, 8));
  }
  SUBCASE("trivial configuration") {
    ToricPolarisedPair pair{segment(0, 2), segment(0, 1)};
    auto tc = make_test_configuration(pair, PLConvexFunction::constant(1, 0), 1);
    CHECK(bivariate_weight_oracle(tc, 4, 6).is_zero());
  }
  SUBCASE("point twist reduces to the untwisted weight") {
    ToricPolarisedPair pair{segment(0, 2), single_point(pt({0}))};
    auto tc = make_test_configuration(pair, pl({{{0}, 0}, {{-1}, 1}}), 1);
    const BiPoly w = bivariate_weight_oracle(tc, 4, 6);
    const auto d = hilbert_weight_data(tc);
    CHECK(d.a_q == 0);
    CHECK(w.coeff(2, 2) / d.a0 == df_from_coefficients(d));
  }
  SUBCASE("degree budget too small") {
    CHECK(kind_of([] { bivariate_weight_oracle(p1_example(true), 2, 6); }) == ErrorKind::InvalidInput);
  }
}

TEST_CASE("norm data vanishes on constant functions") {
  for (int c = 0; c <= 2; ++c) {
    auto tc = make_test_configuration({square(1), std::nullopt}, PLConvexFunction::constant(2, c), 3);
    const auto nd = norm_data(tc);
    CHECK(minimum_norm({NormRoute::Intersection, 2, 1, nd.LdotL, nd.Lnp1}) == 0);
  }
}

TEST_CASE("configuration validation") {
  CHECK(kind_of([] {
          make_test_configuration({segment(0, 2), std::nullopt}, pl({{{0}, 0}, {{-1}, 1}}), q(1, 2));
        }) == ErrorKind::FunctionOutOfRange);
}

TEST_CASE("raising R by one moves the numbers by fibre terms") {
  // this is what the flat case f == R relies on
  SeededRng rng(71);
  for (int t = 0; t < 8; ++t) {
    const int n = 1 + t % 2;
    ToricPolarisedPair pair{n == 1 ? segment(0, 3) : square(2), std::nullopt};
    if (t % 4 == 1) pair.twist = n == 1 ? segment(0, 1) : product(segment(0, 1), single_point(pt({0})));
    const auto tc = semiample_configuration(pair, random_flag_ideal(rng, n, 2, 3, 3));
    const auto up = make_test_configuration(tc.pair, tc.f, tc.R + 1, tc.exponent);
    const auto a = toric_df_inputs(tc), b = toric_df_inputs(up);
    CHECK(a.Lnp1 == b.Lnp1 - (n + 1) * b.Ln);
    CHECK(a.LK == b.LK - n * b.KLn1);
    CHECK(a.LKX == b.LKX - n * b.KLn1);
    CHECK(a.LT == b.LT - n * b.TLn1);
    const auto na = norm_data(tc), nb = norm_data(up);
    CHECK(na.Lnp1 == nb.Lnp1 - (n + 1) * b.Ln);
    CHECK(na.LdotL == nb.LdotL - n * b.Ln);
  }
}

TEST_CASE("f equal to R everywhere") {
  for (const auto& p : {segment(0, 2), square(1)}) {
    const int n = p.ambient_dim();
    const auto tc = make_test_configuration({p, std::nullopt}, PLConvexFunction::constant(n, 1), 1);
    const auto in = toric_df_inputs(tc);
    CHECK(in.Lnp1 == 0);
    CHECK(df_from_intersections(in.mu, in.Lnp1, in.LK, in.LT, n) == 0);
    CHECK(df_from_coefficients(hilbert_weight_data(tc)) == 0);
    const auto nd = norm_data(tc);
    CHECK(minimum_norm({NormRoute::Intersection, n, 1, nd.LdotL, nd.Lnp1}) == 0);
  }
}
