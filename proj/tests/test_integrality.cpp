#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcf/critical_orbit.hpp"
#include "pcf/errors.hpp"
#include "pcf/integrality.hpp"

using pcf::AlgebraicNumber;
using pcf::IntPolynomial;
using pcf::PrimeSet;

namespace {

std::vector<mpz_class> primes(std::initializer_list<long> ps) { return {ps.begin(), ps.end()}; }

pcf::FactorDescriptor periodic(int n) { return pcf::exact_period_factor(2, n); }

// Brute force over F_p for integer alpha: does B have a root congruent to alpha?
bool brute_meets(const IntPolynomial& B, long alpha, long p) {
  mpz_class v = pcf::evaluate_exact(B, mpz_class(alpha));
  return v % p == 0;
}

}  // namespace

TEST_CASE("prime sets") {
  CHECK(PrimeSet(primes({5, 2})).to_string() == "2,5");
  CHECK(PrimeSet().to_string() == "-");
  CHECK_THROWS_AS(PrimeSet(primes({4})), pcf::Error);
  CHECK_THROWS_AS(PrimeSet(primes({3, 3})), pcf::Error);
}

TEST_CASE("meeting primes from the resultant") {
  CHECK(pcf::meeting_primes_fast(IntPolynomial{1, 1}, IntPolynomial{-1, 1}) == primes({2}));
  CHECK(pcf::meeting_primes_fast(IntPolynomial{0, 1}, IntPolynomial{-1, 1}).empty());
  CHECK(pcf::meeting_primes_fast(IntPolynomial{1, 1, 2, 1}, IntPolynomial{-1, 1}) == primes({5}));
  // Independent Horner check of the last one: B(1) = 5.
  CHECK(oracle::horner({1, 1, 2, 1}, 1) == 5);
  CHECK_THROWS_AS(pcf::meeting_primes_fast(IntPolynomial{1, 1}, IntPolynomial{1, 1}), pcf::Error);
}

TEST_CASE("exact residue test") {
  CHECK(pcf::meeting_test_exact(IntPolynomial{1, 1}, IntPolynomial{-1, 1}, 2));
  CHECK_FALSE(pcf::meeting_test_exact(IntPolynomial{1, 1}, IntPolynomial{-1, 2}, 2));
  CHECK(pcf::meeting_test_exact(IntPolynomial{1, 1, 2, 1}, IntPolynomial{-1, 1}, 5));
  CHECK_FALSE(pcf::meeting_test_exact(IntPolynomial{1, 1, 2, 1}, IntPolynomial{-1, 1}, 3));
  // alpha = 2/3 at p = 3 is not 3-integral; at p = 2 it reduces to 0.
  CHECK_FALSE(pcf::meeting_test_exact(IntPolynomial{0, 1}, IntPolynomial{-2, 3}, 3));
  CHECK(pcf::meeting_test_exact(IntPolynomial{0, 1}, IntPolynomial{-2, 3}, 2));
}

TEST_CASE("exact test agrees with brute force on integer alpha") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> dist(-20, 20);
  const long ps[] = {2, 3, 5, 7, 11, 13};
  for (int i = 0; i < 60; ++i) {
    std::vector<mpz_class> c(4);
    for (auto& x : c) x = dist(rng);
    c.back() = 1;
    const IntPolynomial B(c);
    const long alpha = dist(rng);
    for (long p : ps)
      CHECK(pcf::meeting_test_exact(B, IntPolynomial{-alpha, 1}, p) == brute_meets(B, alpha, p));
  }
}

TEST_CASE("fast and exact methods agree when alpha is integral") {
  const auto alpha = IntPolynomial{-1, 0, 1, 1};  // a cubic unit, monic
  for (int n = 1; n <= 5; ++n) {
    const IntPolynomial B = periodic(n).poly;
    const auto fast = pcf::meeting_primes_fast(B, alpha);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
      const bool in_fast = std::find(fast.begin(), fast.end(), mpz_class(p)) != fast.end();
      CHECK(pcf::meeting_test_exact(B, alpha, p) == in_fast);
    }
  }
}

TEST_CASE("S-integrality verdicts") {
  const auto one = AlgebraicNumber::from_rational(1);
  auto v = pcf::is_S_integral(periodic(2), one, PrimeSet(primes({2})));
  CHECK(v.is_S_integral);
  v = pcf::is_S_integral(periodic(2), one, PrimeSet(primes({3})));
  CHECK_FALSE(v.is_S_integral);
  CHECK(v.meeting_primes == primes({2}));
  CHECK(pcf::is_S_integral(periodic(1), one, PrimeSet()).is_S_integral);
  CHECK(pcf::is_S_integral(periodic(1), one, PrimeSet(primes({7}))).is_S_integral);

  // Non-integral alpha: meetings at primes of the denominator use the exact test.
  const auto half = AlgebraicNumber::from_rational(mpq_class(1, 2));
  v = pcf::is_S_integral(periodic(2), half, PrimeSet());
  CHECK(v.method == pcf::IntegralityMethod::NewtonExact);
  // Res(c + 1, 2c - 1) = -3: the prime 3 only.
  CHECK(v.meeting_primes == primes({3}));
}

TEST_CASE("census ground truth") {
  const auto one = AlgebraicNumber::from_rational(1);
  auto rep = pcf::census(2, 3, one, PrimeSet(primes({2, 5})));
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].verdict.meeting_primes.empty());
  CHECK(rep.rows[1].verdict.meeting_primes == primes({2}));
  CHECK(rep.rows[2].verdict.meeting_primes == primes({5}));
  CHECK(rep.s_integral_count == 3);
  CHECK(rep.threshold.to_double() == doctest::Approx(27));

  rep = pcf::census(2, 3, one, PrimeSet());
  CHECK(rep.s_integral_count == 1);
  CHECK(rep.rows[0].verdict.is_S_integral);

  CHECK_THROWS_AS(pcf::census(2, 2, AlgebraicNumber::from_rational(0), PrimeSet()), pcf::Error);
  CHECK_THROWS_AS(pcf::census(2, 2, AlgebraicNumber::from_rational(-2), PrimeSet()), pcf::Error);
}

TEST_CASE("census table") {
  const auto rep = pcf::census(2, 3, AlgebraicNumber::from_rational(1), PrimeSet(primes({2, 5})));
  const std::string tsv = pcf::census_tsv(rep);
  CHECK(tsv.rfind("kind\tpreperiod\tperiod\tdegree\tmeeting_primes\tunfactored\tS_integral\tmethod\n", 0) == 0);
  CHECK(tsv.find("periodic\t0\t3\t3\t5\t-\tyes\tresultant-fast") != std::string::npos);
}
