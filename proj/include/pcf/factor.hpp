#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace pcf {

struct FactorOptions {
  unsigned long trial_bound = 1UL << 16;
  /// Pollard-Brent iterations per composite before giving up on it.
  unsigned long rho_budget = 1UL << 20;
};

/// Prime factorization of |n|. Composites that resist the rho budget are
/// returned whole in `unfactored` rather than guessed at.
struct Factorization {
  std::vector<std::pair<mpz_class, unsigned long>> primes;  ///< sorted by prime
  std::vector<mpz_class> unfactored;

  bool complete() const { return unfactored.empty(); }
};

Factorization factorize(const mpz_class& n, const FactorOptions& options = {});

/// Miller-Rabin (GMP, 30 rounds plus BPSW).
bool is_probable_prime(const mpz_class& n);

/// Exponent of the prime p in n != 0.
unsigned long valuation(const mpz_class& n, const mpz_class& p);

/// Prime divisors of |n| (distinct, sorted); unfactored parts are dropped.
std::vector<mpz_class> prime_divisors(const mpz_class& n, const FactorOptions& options = {});

}  // namespace pcf
