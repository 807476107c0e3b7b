#include <random>

#include "doctest.h"
#include "kstab/error.hpp"
#include "kstab/poly.hpp"

using namespace kstab;

namespace {

std::vector<Sample> samples_of(std::initializer_list<std::pair<int, int>> xs) {
  std::vector<Sample> out;
  for (auto [x, y] : xs) out.push_back({Rational(x), Rational(y)});
  return out;
}

// Independent count of lattice points in r * (unit triangle), by brute force.
Rational triangle_count(int r) {
  int c = 0;
  for (int x = 0; x <= r; ++x)
    for (int y = 0; y <= r; ++y)
      if (x + y <= r) ++c;
  return c;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("+7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK(floor(Rational(-3, 2)) == -2);
  CHECK(ceil(Rational(-3, 2)) == -1);
  CHECK(binomial(5, 2) == 10);
  CHECK(factorial(4) == 24);
}

TEST_CASE("interpolate: linear fit with a verification sample") {
  auto p = interpolate(samples_of({{0, 1}, {1, 3}, {2, 5}}), 1);
  CHECK(p == UniPoly({1, 2}));
}

TEST_CASE("interpolate: zero polynomial") {
  auto p = interpolate(samples_of({{0, 0}, {1, 0}}), 0);
  CHECK(p.is_zero());
  CHECK(p.degree() == -1);
}

TEST_CASE("interpolate: dilated triangle counts") {
  std::vector<Sample> s;
  for (int r = 1; r <= 4; ++r) s.push_back({r, triangle_count(r)});
  CHECK(s[2].y == 10);
  auto p = interpolate(s, 2);
  CHECK(p == UniPoly({1, Rational(3, 2), Rational(1, 2)}));
  // held-out samples
  for (int r : {7, 11, 20}) CHECK(p(r) == triangle_count(r));
}

TEST_CASE("interpolate: errors") {
  CHECK_THROWS_WITH_AS(interpolate(samples_of({{0, 0}, {1, 1}, {2, 4}}), 1), doctest::Contains("predicts"), Error);
  try {
    interpolate(samples_of({{0, 0}, {1, 1}, {2, 4}}), 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentSamples);
  }
  CHECK_THROWS_AS(interpolate(samples_of({{0, 0}}), 1), Error);
  CHECK_THROWS_AS(interpolate(samples_of({{0, 0}, {0, 1}}), 1), Error);
}

TEST_CASE("interpolate: random polynomials reproduce held-out values") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> coef(-20, 20), deg(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = deg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& x : c) {
      x = Rational(coef(rng), 1 + (coef(rng) + 20) % 5);
      x.canonicalize();
    }
    UniPoly truth(c);
    std::vector<Sample> s;
    for (int x = 0; x <= d + 2; ++x) s.push_back({x, truth(x)});
    auto p = interpolate(s, d);
    CHECK(p == truth);
    for (int x : {-5, 31, 100}) CHECK(p(x) == truth(x));
  }
}

TEST_CASE("extract_e_coefficients") {
  CHECK(extract_e_coefficients(BiPoly{}, 2).size() == 3);
  for (const auto& e : extract_e_coefficients(BiPoly{}, 2)) CHECK(e.is_zero());

  BiPoly w;
  w.add(2, 2, 1);
  w.add(1, 1, 1);
  auto e = extract_e_coefficients(w, 1);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == UniPoly::monomial(1, 1));
  CHECK(e[1] == UniPoly::monomial(1, 2));
  CHECK(assemble_e_coefficients(e) == w);

  BiPoly big;
  big.add(0, 4, 1);
  try {
    extract_e_coefficients(big, 2);
    FAIL("expected DegreeOverflow");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::DegreeOverflow);
  }
}

TEST_CASE("extract then reassemble is the identity on random BiPolys") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-9, 9), rd(0, 6), kd(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    BiPoly w;
    for (int t = 0; t < 8; ++t) {
      Rational c(coef(rng), 1 + trial % 3);
      c.canonicalize();
      w.add(rd(rng), kd(rng), c);
    }
    CHECK(assemble_e_coefficients(extract_e_coefficients(w, 3)) == w);
  }
}

TEST_CASE("leading_coefficient") {
  CHECK(leading_coefficient(UniPoly({0, 1, 3}), 2) == 3);
  CHECK(leading_coefficient(UniPoly({0, 1}), 2) == 0);
  CHECK(leading_coefficient(UniPoly{}, 2) == 0);
  CHECK_THROWS_AS(leading_coefficient(UniPoly({0, 0, 0, 1}), 2), Error);
}

TEST_CASE("gcd and reduced rational functions") {
  // (x-1)(x-2) / (x-1)(x+3)
  auto a = UniPoly::linear_root(1) * UniPoly::linear_root(2);
  auto b = (UniPoly::linear_root(1) * UniPoly::linear_root(-3)) * Rational(2);
  CHECK(gcd(a, b) == UniPoly::linear_root(1));
  auto f = RationalFunction::reduced(a, b);
  CHECK(f.den == UniPoly::linear_root(-3));
  CHECK(f(0) == Rational(-1, 3));
  CHECK_THROWS_AS(f(-3), Error);
}

TEST_CASE("Sturm root counting") {
  auto p = UniPoly::linear_root(1) * UniPoly::linear_root(2) * UniPoly::linear_root(2) * UniPoly::linear_root(5);
  CHECK(count_real_roots(p, 0, std::nullopt) == 3);
  CHECK(count_real_roots(p, 1, std::nullopt) == 2);
  CHECK(count_real_roots(p, 0, Rational(2)) == 2);
  CHECK(count_real_roots(UniPoly({1, 0, 1}), -100, std::nullopt) == 0);
}

TEST_CASE("eventual_threshold") {
  // -m + 10 < 0 from 11 on
  CHECK(eventual_threshold(UniPoly({10, -1}), SignCondition::Negative, 0) == Integer(11));
  CHECK(eventual_threshold(UniPoly({10, -1}), SignCondition::NonPositive, 0) == Integer(10));
  CHECK_FALSE(eventual_threshold(UniPoly({10, -1}), SignCondition::Positive, 0).has_value());
  // (m-3)(m-7) > 0 for m >= 8
  auto q = UniPoly::linear_root(3) * UniPoly::linear_root(7);
  CHECK(eventual_threshold(q, SignCondition::Positive, 0) == Integer(8));
  CHECK(eventual_threshold(q, SignCondition::Positive, 20) == Integer(20));
  // brute-force oracle on random polynomials
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> root(-10, 30);
  for (int t = 0; t < 40; ++t) {
    UniPoly p = UniPoly::constant(1);
    for (int i = 0; i < 3; ++i) p = p * UniPoly::linear_root(Rational(root(rng), 1 + t % 2));
    auto m0 = eventual_threshold(p, SignCondition::Positive, -20);
    REQUIRE(m0.has_value());
    for (int m = m0->get_si(); m < 200; ++m) CHECK(p(m) > 0);
    if (*m0 > -20) CHECK_FALSE(p(Rational(*m0 - 1)) > 0);
  }
}
