#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcf/errors.hpp"
#include "pcf/polynomials.hpp"

using pcf::IntPolynomial;

namespace {

IntPolynomial from(const oracle::Coeffs& c) { return IntPolynomial(c); }

oracle::Coeffs coeffs(const IntPolynomial& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

IntPolynomial random_poly(std::mt19937_64& rng, int degree, long range) {
  std::uniform_int_distribution<long> dist(-range, range);
  std::vector<mpz_class> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = dist(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("construction normalizes and reports degree") {
  CHECK(IntPolynomial{}.degree() == -1);
  CHECK(IntPolynomial{1, 2, 0, 0}.degree() == 1);
  CHECK(IntPolynomial{0, 0}.is_zero());
  CHECK(IntPolynomial{3, 0, 1}.is_monic());
  CHECK(IntPolynomial{6, 4, -2}.content() == 2);
  CHECK(IntPolynomial{6, 4, -2}.primitive_part() == IntPolynomial{-3, -2, 1});
  CHECK(IntPolynomial{3, -17, 5}.height() == 17);
}

TEST_CASE("compose") {
  const IntPolynomial t = IntPolynomial::variable();
  CHECK(pcf::compose(IntPolynomial{0, 0, 1}, IntPolynomial{1, 1}) == IntPolynomial{1, 2, 1});
  const IntPolynomial p{0, 1, 1};
  CHECK(pcf::compose(t, p) == p);
  // (t^2 + t) o (t^2 + t) against the convolution oracle.
  const oracle::Coeffs pc = coeffs(p);
  const oracle::Coeffs expect = oracle::add(oracle::mul(pc, pc), pc);
  CHECK(pcf::compose(p, p) == from(expect));
  CHECK(pcf::compose(p, p) == IntPolynomial{0, 1, 2, 2, 1});
}

TEST_CASE("exact evaluation") {
  CHECK(pcf::evaluate_exact(IntPolynomial{0, 1, 1}, mpz_class(3)) == 12);
  CHECK(pcf::evaluate_exact(IntPolynomial{0, 1, 1, 2, 1}, mpz_class(1)) == 5);
  CHECK(pcf::evaluate_exact(IntPolynomial{0, 1}, mpz_class(0)) == 0);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const IntPolynomial p = random_poly(rng, 1 + i % 9, 1000);
    pcf::Rational x(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9));
    x.canonicalize();
    CHECK(pcf::evaluate_exact(p, pcf::Rational(x)) == oracle::horner(coeffs(p), x));
  }
}

TEST_CASE("exact division") {
  CHECK(pcf::divide_exact(IntPolynomial{0, 1, 1}, IntPolynomial{0, 1}) == IntPolynomial{1, 1});
  CHECK(pcf::divide_exact(IntPolynomial{0, 1, 1, 2, 1}, IntPolynomial{0, 1}) == IntPolynomial{1, 1, 2, 1});
  CHECK_THROWS_AS(pcf::divide_exact(IntPolynomial{1, 0, 1}, IntPolynomial{-1, 1}), pcf::Error);
  try {
    pcf::divide_exact(IntPolynomial{1, 0, 1}, IntPolynomial{-1, 1});
  } catch (const pcf::Error& e) {
    CHECK(e.kind() == pcf::ErrorKind::NotDivisible);
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const IntPolynomial a = random_poly(rng, 1 + i % 7, 50), b = random_poly(rng, 1 + i % 5, 50);
    CHECK(pcf::divide_exact(a * b, b) == a);
  }
}

TEST_CASE("resultant matches the Sylvester determinant") {
  CHECK(abs(pcf::resultant(IntPolynomial{0, 1}, IntPolynomial{-1, 1})) == 1);
  CHECK(abs(pcf::resultant(IntPolynomial{1, 0, 1}, IntPolynomial{-1, 1})) == 2);
  const IntPolynomial p{1, 1, 2, 1};
  CHECK(pcf::resultant(p, p) == 0);

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 60; ++i) {
    const IntPolynomial a = random_poly(rng, 1 + i % 8, 30), b = random_poly(rng, 1 + (i / 8) % 7, 30);
    CHECK(pcf::resultant(a, b) == oracle::sylvester_resultant(coeffs(a), coeffs(b)));
  }
}

TEST_CASE("resultant is multiplicative and vanishes on a common factor") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const IntPolynomial a = random_poly(rng, 2, 9), b = random_poly(rng, 3, 9), c = random_poly(rng, 2, 9);
    CHECK(pcf::resultant(a * b, c) == pcf::resultant(a, c) * pcf::resultant(b, c));
    CHECK(pcf::resultant(a * c, b * c) == 0);
  }
}

TEST_CASE("gcd and squarefree part") {
  const IntPolynomial t = IntPolynomial::variable();
  CHECK(pcf::squarefree_part(IntPolynomial{0, 0, 1}) == t);
  CHECK(pcf::squarefree_part(IntPolynomial{0, 1, 1}) == IntPolynomial{0, 1, 1});
  const IntPolynomial sq = pow(IntPolynomial{1, 1}, 2) * IntPolynomial{-2, 1};
  CHECK(pcf::squarefree_part(sq) == IntPolynomial{-2, -1, 1});
  CHECK_FALSE(pcf::is_squarefree(sq));
  CHECK(pcf::is_squarefree(IntPolynomial{-2, -1, 1}));

  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    const IntPolynomial a = random_poly(rng, 2, 20), b = random_poly(rng, 2, 20), c = random_poly(rng, 2, 20);
    const IntPolynomial g = pcf::gcd(a * c, b * c);
    // c divides the gcd.
    CHECK_NOTHROW(pcf::divide_exact(g, c.primitive_part()));
  }
}

TEST_CASE("pseudo remainder identity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const IntPolynomial p = random_poly(rng, 6, 40), q = random_poly(rng, 3, 40);
    const IntPolynomial r = pcf::pseudo_remainder(p, q);
    CHECK(r.degree() < q.degree());
    mpz_class scale = 1;
    for (long k = 0; k < p.degree() - q.degree() + 1; ++k) scale *= q.leading();
    CHECK_NOTHROW(pcf::divide_exact(p * scale - r, q));
  }
}

TEST_CASE("serialization round-trips") {
  std::vector<mpz_class> big = {mpz_class("-123456789012345678901234567890"), 0, 7};
  const IntPolynomial q(big);
  CHECK(pcf::parse_polynomial(pcf::serialize(q)) == q);
  CHECK(pcf::serialize(IntPolynomial{1, 2}) == "deg=1\n1\n2\n");
  CHECK_THROWS(pcf::parse_polynomial("deg=2\n1\n"));
}

TEST_CASE("reduction modulo p") {
  namespace mp = pcf::modp;
  const IntPolynomial p{-1, 0, 1};  // (t-1)(t+1), a square mod 2
  CHECK(mp::reduce(p, 2) == mp::Poly{1, 0, 1});
  CHECK(mp::derivative(mp::reduce(p, 2), 2).empty());
  CHECK(mp::degree(mp::gcd(mp::reduce(p, 2), mp::reduce(IntPolynomial{1, 1}, 2), 2)) == 1);
  CHECK(mp::degree(mp::gcd(mp::reduce(p, 3), mp::derivative(mp::reduce(p, 3), 3), 3)) == 0);
}
