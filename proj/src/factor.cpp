#include "pcf/factor.hpp"

#include <algorithm>
#include <map>

#include "pcf/errors.hpp"

namespace pcf {
namespace {

// Brent's cycle-finding variant of Pollard rho with batched gcds.
mpz_class rho(const mpz_class& n, unsigned long seed, unsigned long budget) {
  const unsigned long batch = 128;
  mpz_class y = seed + 2, c = seed + 1, q = 1, g = 1, x, ys, diff;
  unsigned long r = 1, used = 0;
  auto step = [&](mpz_class& v) {
    v = v * v + c;
    v %= n;
  };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    unsigned long k = 0;
    do {
      ys = y;
      const unsigned long m = std::min(batch, r - k);
      for (unsigned long i = 0; i < m; ++i) {
        step(y);
        diff = abs(x - y);
        q = (q * diff) % n;
      }
      used += m;
      g = gcd(q, n);
      k += m;
    } while (k < r && g == 1 && used < budget);
    r *= 2;
  } while (g == 1 && used < budget);
  if (g == n) {
    // Batch overshot; replay one step at a time.
    do {
      step(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void split(const mpz_class& n, const FactorOptions& options, std::map<mpz_class, unsigned long>& out,
           std::vector<mpz_class>& stuck) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    split(s, options, out, stuck);
    split(s, options, out, stuck);
    return;
  }
  for (unsigned long seed = 1; seed <= 8; ++seed) {
    mpz_class g = rho(n, seed, options.rho_budget / 8 + 1);
    if (g != 1 && g != n) {
      split(g, options, out, stuck);
      split(n / g, options, out, stuck);
      return;
    }
  }
  stuck.push_back(n);
}

}  // namespace

bool is_probable_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

unsigned long valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  mpz_class rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

Factorization factorize(const mpz_class& n, const FactorOptions& options) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cannot factor zero");
  mpz_class m = abs(n);
  std::map<mpz_class, unsigned long> found;
  for (unsigned long p = 2; p <= options.trial_bound && m > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_class prime = p;
      found[prime] += mpz_remove(m.get_mpz_t(), m.get_mpz_t(), prime.get_mpz_t());
    }
    if (mpz_cmp_ui(m.get_mpz_t(), p * p) < 0 && m > 1) {
      ++found[m];
      m = 1;
    }
  }
  Factorization f;
  split(m, options, found, f.unfactored);
  f.primes.assign(found.begin(), found.end());
  std::sort(f.unfactored.begin(), f.unfactored.end());
  return f;
}

std::vector<mpz_class> prime_divisors(const mpz_class& n, const FactorOptions& options) {
  std::vector<mpz_class> out;
  for (const auto& [p, e] : factorize(n, options).primes) out.push_back(p);
  return out;
}

}  // namespace pcf
