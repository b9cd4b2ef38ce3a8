#include <doctest.h>

#include "oracles.hpp"
#include "pcf/critical_orbit.hpp"
#include "pcf/errors.hpp"

using pcf::IntPolynomial;

namespace {
oracle::Coeffs coeffs(const IntPolynomial& p) { return {p.coeffs().begin(), p.coeffs().end()}; }
}  // namespace

TEST_CASE("gleason polynomials") {
  CHECK(pcf::gleason(2, 1).poly == IntPolynomial{0, 1});
  CHECK(pcf::gleason(2, 2).poly == IntPolynomial{0, 1, 1});
  CHECK(pcf::gleason(2, 3).poly == IntPolynomial{0, 1, 1, 2, 1});
  const auto g = pcf::gleason(3, 4).poly;
  CHECK(g.degree() == 27);
  CHECK(g.is_monic());
}

TEST_CASE("gleason matches naive iteration") {
  for (int d = 2; d <= 5; ++d)
    for (int n = 1; pcf::checked_power(d, n - 1, 300) > 0; ++n)
      CHECK(coeffs(pcf::gleason(d, n).poly) == oracle::gleason(d, n));
}

TEST_CASE("degree cap") {
  CHECK(pcf::gleason(2, 13).poly.degree() == 4096);
  CHECK_THROWS_AS(pcf::gleason(2, 14), pcf::Error);
  CHECK_THROWS_AS(pcf::gleason(3, 20), pcf::Error);
  CHECK_THROWS_AS(pcf::gleason(1, 2), pcf::Error);
}

TEST_CASE("preperiodic polynomials") {
  CHECK(pcf::preperiodic_poly(2, 0, 2) == IntPolynomial{0, 1, 1});
  CHECK(pcf::preperiodic_poly(2, 1, 2) == IntPolynomial{0, 0, 1});
  CHECK(pcf::preperiodic_poly(2, 1, 3) == IntPolynomial{0, 0, 1, 2, 1});
  CHECK_THROWS(pcf::preperiodic_poly(2, 2, 2));
}

TEST_CASE("moebius") {
  const int expect[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int n = 1; n <= 12; ++n) CHECK(pcf::moebius(n) == expect[n - 1]);
}

TEST_CASE("exact period factors") {
  CHECK(pcf::exact_period_factor(2, 1).poly == IntPolynomial{0, 1});
  CHECK(pcf::exact_period_factor(2, 2).poly == IntPolynomial{1, 1});
  CHECK(pcf::exact_period_factor(2, 3).poly == IntPolynomial{1, 1, 2, 1});
  // Degrees 1, 1, 3, 6, 15, 27, 63, 120, 252, 495: the count of hyperbolic
  // components of each period.
  const long counts[] = {1, 1, 3, 6, 15, 27, 63, 120, 252, 495};
  for (int n = 1; n <= 10; ++n) CHECK(pcf::exact_period_factor(2, n).poly.degree() == counts[n - 1]);
}

TEST_CASE("exact period factors multiply back to g_n") {
  for (int d = 2; d <= 4; ++d) {
    for (int n = 1; n <= 4; ++n) {
      IntPolynomial prod = IntPolynomial::constant(1);
      for (int k = 1; k <= n; ++k)
        if (n % k == 0) prod *= pcf::exact_period_factor(d, k).poly;
      CHECK(prod == pcf::gleason(d, n).poly);
    }
  }
}

TEST_CASE("preperiodic factors") {
  // z_2 = z_3: c = -2 only (orbit 0, -2, 2, 2).
  const auto f = pcf::misiurewicz_exact_factor(2, 2, 1);
  CHECK(f.poly == IntPolynomial{2, 1});
  // -2 is a root of g_3 - g_2, not of g_3 - g_1.
  CHECK(pcf::evaluate_exact(pcf::preperiodic_poly(2, 2, 3), mpz_class(-2)) == 0);
  CHECK(pcf::evaluate_exact(pcf::preperiodic_poly(2, 1, 3), mpz_class(-2)) == 4);
  CHECK(pcf::misiurewicz_factor(2, 1, 3).poly == IntPolynomial::constant(1));
  // c = i: 0, i, i - 1, -i, i - 1.
  CHECK(pcf::misiurewicz_exact_factor(2, 2, 2).poly == IntPolynomial{1, 0, 1});
  const auto m31 = pcf::misiurewicz_exact_factor(2, 3, 1).poly;
  CHECK(m31.degree() == 3);
  CHECK_NOTHROW(pcf::divide_exact(pcf::preperiodic_poly(2, 3, 4), m31));
}

TEST_CASE("preperiodic factors share no root with periodic ones") {
  for (int level = 3; level <= 6; ++level) {
    for (int m = 2; m < level; ++m) {
      const auto f = pcf::misiurewicz_exact_factor(2, m, level - m);
      CHECK(f.poly.degree() == f.expected_degree);
      CHECK(pcf::is_squarefree(f.poly));
      for (int n = 1; n <= level; ++n) CHECK(pcf::resultant(f.poly, pcf::exact_period_factor(2, n).poly) != 0);
    }
  }
}

TEST_CASE("misiurewicz counts") {
  CHECK(pcf::misiurewicz_count(2, 2, 3) == 1);
  CHECK(pcf::misiurewicz_count(2, 1, 3) == 0);
  // d = 3: (d - 1)(d^(n-2) - d^(gcd - 1)).
  CHECK(pcf::misiurewicz_count(3, 2, 3) == 2 * (3 - 1));
  CHECK(pcf::misiurewicz_exact_factor(3, 2, 1).poly.degree() == 4);
}

TEST_CASE("critical cycle detection") {
  using P = std::pair<int, int>;
  CHECK(pcf::find_critical_cycle(2, IntPolynomial{0, 1}) == P{0, 1});
  CHECK(pcf::find_critical_cycle(2, IntPolynomial{1, 1}) == P{0, 2});
  CHECK(pcf::find_critical_cycle(2, IntPolynomial{2, 1}) == P{2, 3});
  CHECK(pcf::find_critical_cycle(2, IntPolynomial{1, 0, 1}) == P{2, 4});
  CHECK(pcf::find_critical_cycle(2, IntPolynomial{1, 1, 2, 1}) == P{0, 3});
  CHECK_FALSE(pcf::find_critical_cycle(2, IntPolynomial{-1, 1}).has_value());
  CHECK_FALSE(pcf::find_critical_cycle(2, IntPolynomial{-1, 2}).has_value());
  CHECK_FALSE(pcf::find_critical_cycle(2, IntPolynomial{-1, -1, 1}).has_value());
}
