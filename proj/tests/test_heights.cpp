#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pcf/heights.hpp"

using pcf::AlgebraicNumber;
using pcf::ComplexBall;
using pcf::IntPolynomial;
using pcf::Rational;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("escape rate oracle values") {
  // Exact integer orbits, truncated far past double precision.
  const double g1 = oracle::escape_rate(2, 1, 14);
  const double g3 = oracle::escape_rate(2, 3, 12);
  CHECK(g1 == doctest::Approx(0.40735452273948).epsilon(1e-13));
  CHECK(g3 == doctest::Approx(1.24762549977193).epsilon(1e-13));
  CHECK(std::log(677.0) / 16 == doctest::Approx(g1).epsilon(1e-4));
}

TEST_CASE("escape rate at rational parameters") {
  auto r = pcf::escape_rate_arch(2, Rational(1), 128, 1e-30);
  CHECK(r.escaped);
  CHECK(r.value.to_double() == doctest::Approx(oracle::escape_rate(2, 1, 14)).epsilon(1e-14));
  CHECK(r.error_bound.to_double() <= 1e-10);

  r = pcf::escape_rate_arch(2, Rational(3), 128, 1e-30);
  CHECK(r.value.to_double() == doctest::Approx(oracle::escape_rate(2, 3, 12)).epsilon(1e-14));

  r = pcf::escape_rate_arch(2, Rational(1, 2), 128, 1e-30);
  CHECK(r.escaped);
  CHECK(r.value.to_double() == doctest::Approx(oracle::escape_rate(2, Rational(1, 2), 20)).epsilon(1e-12));

  r = pcf::escape_rate_arch(2, Rational(0), 128);
  CHECK_FALSE(r.escaped);
  CHECK(r.value.is_zero());

  r = pcf::escape_rate_arch(3, Rational(-2, 3), 128);
  CHECK(r.value.to_double() == doctest::Approx(oracle::escape_rate(3, Rational(-2, 3), 12)).epsilon(1e-12));
}

TEST_CASE("escape rate approaches log|c| for large parameters") {
  double prev = 0;
  for (int k = 1; k <= 6; ++k) {
    const double v = pcf::escape_rate_arch(2, Rational(k * 10), 128).value.to_double();
    CHECK(v > prev);
    CHECK(std::abs(v - std::log(k * 10.0)) < 0.05);
    prev = v;
  }
}

TEST_CASE("local height functional equation") {
  CHECK(pcf::local_height_functional_check(2, ComplexBall::from_rational(1, 128), ComplexBall::from_rational(3, 128))
            .to_double() < 1e-10);
  auto l0 = pcf::local_height(2, ComplexBall::from_rational(0, 128), ComplexBall::from_rational(0, 128));
  CHECK(l0.value.is_zero());
  auto l10 = pcf::local_height(2, ComplexBall::from_rational(0, 128), ComplexBall::from_rational(10, 128));
  CHECK(l10.value.to_double() == doctest::Approx(std::log(10.0)).epsilon(1e-15));
  CHECK(pcf::local_height_functional_check(2, ComplexBall::from_rational(0, 128), ComplexBall::from_rational(10, 128))
            .to_double() < 1e-12);
}

TEST_CASE("functional equation on random points") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 25; ++i) {
    const ComplexBall c = ComplexBall::point(u(rng), u(rng), 128), z = ComplexBall::point(u(rng), u(rng), 128);
    CHECK(pcf::local_height_functional_check(2 + i % 3, c, z).to_double() < 1e-10);
  }
}

TEST_CASE("newton polygon valuations") {
  auto v = pcf::newton_polygon_valuations(IntPolynomial{-2, 0, 1}, 2);
  REQUIRE(v.size() == 1);
  CHECK(v[0].first == Rational(1, 2));
  CHECK(v[0].second == 2);

  v = pcf::newton_polygon_valuations(IntPolynomial{-1, 3}, 3);
  REQUIRE(v.size() == 1);
  CHECK(v[0].first == -1);

  // (t - 4)(2t - 1) = 2t^2 - 9t + 4 at 2: roots of valuation 2 and -1.
  v = pcf::newton_polygon_valuations(IntPolynomial{4, -9, 2}, 2);
  REQUIRE(v.size() == 2);
  CHECK(v[0].first == -1);
  CHECK(v[1].first == 2);
}

TEST_CASE("non-archimedean green function") {
  CHECK(pcf::green_nonarch(Rational(1, 2), 2).to_double() == doctest::Approx(kLog2));
  CHECK(pcf::green_nonarch(Rational(3), 5).is_zero());
  CHECK(pcf::green_nonarch(AlgebraicNumber::from_min_poly(IntPolynomial{-2, 0, 1}, 0), 2).is_zero());
  // Roots of 4t^2 - 2 = 2(2t^2 - 1): both of valuation -1/2 at 2.
  CHECK(pcf::green_nonarch(AlgebraicNumber::from_min_poly(IntPolynomial{-1, 0, 2}, 0), 2).to_double() ==
        doctest::Approx(kLog2 / 2));
}

TEST_CASE("weil height examples") {
  CHECK(pcf::weil_height(AlgebraicNumber::from_rational(2)).value.to_double() == doctest::Approx(kLog2));
  CHECK(pcf::weil_height(AlgebraicNumber::from_rational(Rational(1, 3))).value.to_double() ==
        doctest::Approx(std::log(3.0)));
  const auto phi = AlgebraicNumber::from_min_poly(IntPolynomial{-1, -1, 1}, 1);
  CHECK(pcf::weil_height(phi).value.to_double() == doctest::Approx(0.48121182505960344 / 2));
  CHECK(pcf::weil_height(AlgebraicNumber::from_min_poly(IntPolynomial{-2, 0, 1}, 0)).value.to_double() ==
        doctest::Approx(kLog2 / 2));
}

TEST_CASE("weil height forms agree") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> dist(-6, 6);
  int tested = 0;
  while (tested < 20) {
    std::vector<mpz_class> c(static_cast<std::size_t>(2 + tested % 3));
    for (auto& x : c) x = dist(rng);
    if (c.back() == 0 || c.front() == 0) continue;
    IntPolynomial p = IntPolynomial(c).primitive_part();
    if (!pcf::is_squarefree(p)) continue;
    const auto a = AlgebraicNumber::from_min_poly(p, 0);
    const auto h1 = pcf::weil_height(a), h2 = pcf::weil_height_local(a);
    CHECK(std::abs((h1.value - h2.value).to_double()) < 1e-20);
    ++tested;
  }
}

TEST_CASE("critical canonical height") {
  auto h = pcf::critical_canonical_height(2, AlgebraicNumber::from_rational(0));
  CHECK(h.value.is_zero());
  CHECK(h.critical_cycle.has_value());
  h = pcf::critical_canonical_height(2, AlgebraicNumber::from_rational(-1));
  CHECK(h.value.is_zero());
  h = pcf::critical_canonical_height(2, AlgebraicNumber::from_min_poly(IntPolynomial{1, 0, 1}, 0));
  CHECK(h.value.is_zero());

  h = pcf::critical_canonical_height(2, AlgebraicNumber::from_rational(1));
  CHECK(h.value.to_double() == doctest::Approx(oracle::escape_rate(2, 1, 14)).epsilon(1e-14));
  CHECK_FALSE(h.non_escape_undetermined);

  h = pcf::critical_canonical_height(2, AlgebraicNumber::from_rational(Rational(1, 2)));
  CHECK(h.value.to_double() ==
        doctest::Approx(oracle::escape_rate(2, Rational(1, 2), 20) + kLog2).epsilon(1e-12));
}
