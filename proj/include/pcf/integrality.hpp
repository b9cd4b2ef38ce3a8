#pragma once

#include <string>
#include <vector>

#include "pcf/critical_orbit.hpp"
#include "pcf/heights.hpp"
#include "pcf/polynomials.hpp"

namespace pcf {

/// Finite primes of S; the archimedean places are always included implicitly.
class PrimeSet {
 public:
  PrimeSet() = default;
  /// Throws InvalidArgument on a non-prime or a repeated entry.
  explicit PrimeSet(std::vector<mpz_class> primes);

  const std::vector<mpz_class>& primes() const { return primes_; }
  bool contains(const mpz_class& p) const;
  std::size_t size() const { return primes_.size(); }
  /// Comma-separated, or "-" when empty.
  std::string to_string() const;

 private:
  std::vector<mpz_class> primes_;
};

enum class IntegralityMethod { ResultantFast, NewtonExact };

struct IntegralityVerdict {
  /// Primes outside the archimedean places where a root of the factor and a
  /// conjugate of alpha meet. Sorted.
  std::vector<mpz_class> meeting_primes;
  /// Cofactors of the resultant that could not be split; every prime factor
  /// of these is a meeting prime.
  std::vector<mpz_class> unfactored;
  bool is_S_integral = false;
  IntegralityMethod method = IntegralityMethod::ResultantFast;
  mpz_class resultant;
};

/// Primes p with v_p(Res(B, A)) > deg(B) v_p(lc A). B must be monic.
/// Throws ZeroResultant when B and A share a root.
std::vector<mpz_class> meeting_primes_fast(const IntPolynomial& B, const IntPolynomial& A);

/// Whether some root of B and some p-integral root of A have the same
/// reduction mod p. Exact: the p-integral roots of A are those of
/// A / p^(v_p(a_m)) mod p, m being where the Newton polygon turns upward,
/// so the test is a gcd over F_p. B must be monic.
bool meeting_test_exact(const IntPolynomial& B, const IntPolynomial& A, const mpz_class& p);

/// S-integrality of every root of the factor relative to alpha. Decided
/// exactly even when the resultant cannot be factored completely.
IntegralityVerdict is_S_integral(const FactorDescriptor& factor, const AlgebraicNumber& alpha, const PrimeSet& S);

struct CensusRow {
  FactorDescriptor factor;
  IntegralityVerdict verdict;
};

struct CensusReport {
  int d = 2;
  int max_n = 1;
  AlgebraicNumber alpha;
  PrimeSet S;
  std::vector<CensusRow> rows;
  long s_integral_count = 0;
  /// C1 |S|^3 [L:Q]^8 with C1 = 1, |S| counting the archimedean place.
  Real threshold;
};

/// Verdicts for every exact-period factor of level <= max_n and every
/// exact-type preperiodic factor z_m = z_{m+q}, m >= 2, m + q <= max_n.
/// Throws HypothesisViolated when alpha itself is a PCF parameter.
CensusReport census(int d, int max_n, const AlgebraicNumber& alpha, const PrimeSet& S,
                    const OrbitConfig& config = {});

/// Tab-separated table with a header row.
std::string census_tsv(const CensusReport& report);

}  // namespace pcf
