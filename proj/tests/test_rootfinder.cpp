#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pcf/critical_orbit.hpp"
#include "pcf/errors.hpp"
#include "pcf/rootfinder.hpp"

using pcf::ComplexBall;
using pcf::IntPolynomial;

namespace {

std::complex<double> center(const ComplexBall& b) { return {b.center().re.to_double(), b.center().im.to_double()}; }

bool close_to_some(const std::vector<ComplexBall>& roots, std::complex<double> z, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](const ComplexBall& r) { return std::abs(center(r) - z) < tol; });
}

}  // namespace

TEST_CASE("low degree roots") {
  auto r1 = pcf::all_roots(IntPolynomial{1, 1}).roots;
  REQUIRE(r1.size() == 1);
  CHECK(center(r1[0]) == std::complex<double>(-1, 0));

  auto r2 = pcf::all_roots(IntPolynomial{0, 1, 1}).roots;
  REQUIRE(r2.size() == 2);
  CHECK(std::abs(center(r2[0]) + 1.0) < 1e-15);
  CHECK(std::abs(center(r2[1])) < 1e-15);
}

TEST_CASE("period-3 roots agree with the bisection oracle") {
  const auto roots = pcf::all_roots(IntPolynomial{1, 1, 2, 1}).roots;
  REQUIRE(roots.size() == 3);
  for (const auto& z : oracle::period3_roots()) CHECK(close_to_some(roots, z, 1e-12));
  CHECK(std::abs(oracle::period3_roots()[0] + 1.7548776662) < 1e-9);
  CHECK(pcf::min_pairwise_distance(roots).to_double() == doctest::Approx(1.4897).epsilon(1e-4));
}

TEST_CASE("root balls contain a root of the polynomial") {
  // Residual |p(center)| is tiny compared with the ball radius scale.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> dist(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<mpz_class> c(8);
    for (auto& x : c) x = dist(rng);
    c.back() = 1 + trial % 3;
    IntPolynomial p = pcf::squarefree_part(IntPolynomial(c));
    if (p.degree() < 1) continue;
    pcf::RootOptions opts;
    opts.precision_bits = 128;
    const auto set = pcf::all_roots(p, opts);
    CHECK(static_cast<long>(set.roots.size()) == p.degree());
    for (std::size_t i = 0; i < set.roots.size(); ++i) {
      CHECK(set.roots[i].radius().to_double() <= std::ldexp(1.0, -64) * (1 + std::abs(center(set.roots[i]))));
      for (std::size_t j = i + 1; j < set.roots.size(); ++j) CHECK(set.roots[i].disjoint(set.roots[j]));
    }
    // Vieta: the sum of the roots is -a_{n-1}/a_n.
    std::complex<double> sum = 0;
    for (const auto& r : set.roots) sum += center(r);
    const double expect = -mpq_class(p.coeff(p.degree() - 1), p.leading()).get_d();
    CHECK(std::abs(sum - expect) < 1e-9);
  }
}

TEST_CASE("roots are sorted and reproducible") {
  const auto a = pcf::all_roots(IntPolynomial{1, 1, 2, 1, 0, 3}).roots;
  const auto b = pcf::all_roots(IntPolynomial{1, 1, 2, 1, 0, 3}).roots;
  REQUIRE(a.size() == b.size());
  CHECK(std::is_sorted(a.begin(), a.end(), pcf::root_order));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].center().re == b[i].center().re);
    CHECK(a[i].center().im == b[i].center().im);
    CHECK(a[i].radius() == b[i].radius());
  }
}

TEST_CASE("non-squarefree input is rejected") {
  CHECK_THROWS_AS(pcf::all_roots(IntPolynomial{1, 2, 1}), pcf::Error);
}

TEST_CASE("gleason roots through the orbit recursion") {
  for (int d = 2; d <= 3; ++d) {
    for (int n = 2; n <= (d == 2 ? 7 : 5); ++n) {
      const auto g = pcf::gleason(d, n);
      pcf::RootOptions opts;
      opts.precision_bits = 128;
      const auto set = pcf::pcf_parameters({pcf::FactorKind::Gleason, d, 0, n, g.poly, g.poly.degree()}, opts);
      CHECK(static_cast<long>(set.roots.size()) == g.poly.degree());
      // c = 0 has period 1, so it is a root at every level.
      CHECK(close_to_some(set.roots, 0.0, 1e-20));
    }
  }
}

TEST_CASE("horner and orbit targets agree") {
  const auto g = pcf::gleason(2, 5).poly;
  pcf::RootOptions opts;
  opts.precision_bits = 128;
  const auto horner = pcf::all_roots(pcf::HornerTarget(g), opts).roots;
  const auto orbit = pcf::all_roots(pcf::CriticalOrbitTarget(2, {{0, 5, 1}}, g), opts).roots;
  REQUIRE(horner.size() == orbit.size());
  for (std::size_t i = 0; i < horner.size(); ++i) CHECK(std::abs(center(horner[i]) - center(orbit[i])) < 1e-30);
}

TEST_CASE("min pairwise distance and closest root") {
  const auto roots = pcf::all_roots(IntPolynomial{0, 1, 1}).roots;
  CHECK(pcf::min_pairwise_distance(roots).to_double() == doctest::Approx(1.0));
  CHECK_THROWS(pcf::min_pairwise_distance({roots[0]}));

  auto c = pcf::closest_root_to(roots, ComplexBall::from_rational(1, 128));
  CHECK(std::abs(center(roots[c.index])) < 1e-30);
  CHECK(c.lower.to_double() == doctest::Approx(1.0));
  c = pcf::closest_root_to(roots, ComplexBall::from_rational(mpq_class(-9, 10), 128));
  CHECK(center(roots[c.index]).real() == doctest::Approx(-1.0));
  CHECK(c.upper.to_double() == doctest::Approx(0.1));

  const auto p3 = pcf::all_roots(IntPolynomial{1, 1, 2, 1}).roots;
  c = pcf::closest_root_to(p3, ComplexBall::from_rational(1, 128));
  CHECK(std::abs(center(p3[c.index]).imag()) > 0.5);
  const double expect = std::abs(oracle::period3_roots()[1] - 1.0);
  CHECK(expect == doctest::Approx(1.3472).epsilon(1e-4));
  CHECK(c.lower.to_double() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("orbit-term forms reproduce the factors") {
  auto expand = [](int d, const std::vector<pcf::OrbitTerm>& terms) {
    IntPolynomial num = IntPolynomial::constant(1), den = IntPolynomial::constant(1);
    for (const auto& t : terms) {
      const IntPolynomial base = pcf::gleason(d, t.b).poly - (t.a ? pcf::gleason(d, t.a).poly : IntPolynomial{});
      (t.e > 0 ? num : den) *= pow(base, static_cast<unsigned long>(std::abs(t.e)));
    }
    return pcf::divide_exact(num, den);
  };
  for (int d = 2; d <= 3; ++d) {
    for (int level = 2; level <= (d == 2 ? 7 : 5); ++level) {
      const auto p = pcf::exact_period_factor(d, level);
      CHECK(expand(d, pcf::orbit_terms(p)) == p.poly);
      for (int m = 2; m < level; ++m) {
        const auto f = pcf::misiurewicz_exact_factor(d, m, level - m);
        CHECK(expand(d, pcf::orbit_terms(f)) == f.poly);
        const auto g = pcf::misiurewicz_factor(d, m, level);
        CHECK(expand(d, pcf::orbit_terms(g)) == g.poly);
      }
    }
  }
  CHECK(pcf::orbit_terms(pcf::misiurewicz_factor(2, 1, 3)).empty());
}

TEST_CASE("preperiodic roots through the orbit recursion match Horner") {
  const auto f = pcf::misiurewicz_exact_factor(2, 3, 3);
  pcf::RootOptions opts;
  opts.precision_bits = 128;
  const auto horner = pcf::all_roots(pcf::HornerTarget(f.poly), opts).roots;
  const auto orbit = pcf::pcf_parameters(f, opts).roots;
  REQUIRE(horner.size() == orbit.size());
  for (std::size_t i = 0; i < horner.size(); ++i) CHECK(std::abs(center(horner[i]) - center(orbit[i])) < 1e-30);
}
