#include "pcf/integrality.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pcf/bounds.hpp"
#include "pcf/errors.hpp"
#include "pcf/factor.hpp"

namespace pcf {
namespace {

void require_monic(const IntPolynomial& B) {
  if (!B.is_monic()) throw Error(ErrorKind::InvalidArgument, "factor polynomial must be monic");
}

mpz_class checked_resultant(const IntPolynomial& B, const IntPolynomial& A) {
  mpz_class r = resultant(B, A);
  if (r == 0) throw Error(ErrorKind::ZeroResultant, "factor and minimal polynomial share a root");
  return r;
}

bool fits_modp(const mpz_class& p) { return mpz_cmp_ui(p.get_mpz_t(), std::numeric_limits<unsigned long>::max() >> 1) < 0; }

std::string primes_to_string(const std::vector<mpz_class>& ps) {
  if (ps.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ',';
    out += ps[i].get_str();
  }
  return out;
}

const char* kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::Gleason: return "gleason";
    case FactorKind::ExactPeriod: return "periodic";
    case FactorKind::Misiurewicz: return "preperiodic";
    case FactorKind::MisiurewiczExact: return "preperiodic";
  }
  return "?";
}

}  // namespace

PrimeSet::PrimeSet(std::vector<mpz_class> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (primes_[i] < 2 || !is_probable_prime(primes_[i]))
      throw Error(ErrorKind::InvalidArgument, primes_[i].get_str() + " is not prime");
    if (i > 0 && primes_[i] == primes_[i - 1])
      throw Error(ErrorKind::InvalidArgument, "duplicate prime " + primes_[i].get_str());
  }
}

bool PrimeSet::contains(const mpz_class& p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

std::string PrimeSet::to_string() const { return primes_to_string(primes_); }

std::vector<mpz_class> meeting_primes_fast(const IntPolynomial& B, const IntPolynomial& A) {
  require_monic(B);
  const mpz_class res = checked_resultant(B, A);
  std::vector<mpz_class> out;
  for (const auto& [p, e] : factorize(res).primes) {
    const unsigned long lc_val = mpz_divisible_p(A.leading().get_mpz_t(), p.get_mpz_t()) ? valuation(A.leading(), p) : 0;
    if (e > static_cast<unsigned long>(B.degree()) * lc_val) out.push_back(p);
  }
  return out;
}

bool meeting_test_exact(const IntPolynomial& B, const IntPolynomial& A, const mpz_class& p) {
  require_monic(B);
  if (A.degree() < 1) throw Error(ErrorKind::InvalidArgument, "alpha's polynomial must be nonconstant");
  if (!fits_modp(p)) {
    // Too large for word-size residue arithmetic; such primes cannot divide
    // a word-size leading coefficient, so every root of A is p-integral and
    // a meeting is exactly p | Res(B, A).
    if (mpz_divisible_p(A.leading().get_mpz_t(), p.get_mpz_t()))
      throw Error(ErrorKind::InvalidArgument, "prime too large for the residue-field test");
    return mpz_divisible_p(checked_resultant(B, A).get_mpz_t(), p.get_mpz_t()) != 0;
  }
  const unsigned long q = p.get_ui();
  // m = number of p-integral roots: sum of multiplicities with valuation >= 0.
  long m = 0;
  for (const auto& [val, count] : newton_polygon_valuations(A, p))
    if (val >= 0) m += count;
  // Roots at 0 (a zero constant term) sit left of the polygon.
  long zeros = 0;
  while (A.coeff(static_cast<std::size_t>(zeros)) == 0) ++zeros;
  m += zeros;
  if (m == 0) return false;
  const unsigned long shift = valuation(A.coeff(static_cast<std::size_t>(m)), p);
  std::vector<mpz_class> reduced(A.coeffs().begin(), A.coeffs().end());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), q, shift);
  for (auto& c : reduced) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());
  const modp::Poly a_bar = modp::reduce(IntPolynomial(std::move(reduced)), q);
  const modp::Poly b_bar = modp::reduce(B, q);
  return modp::degree(modp::gcd(a_bar, b_bar, q)) >= 1;
}

IntegralityVerdict is_S_integral(const FactorDescriptor& factor, const AlgebraicNumber& alpha, const PrimeSet& S) {
  IntegralityVerdict v;
  const IntPolynomial& B = factor.poly;
  const IntPolynomial& A = alpha.min_poly;
  if (B.degree() < 1) {
    v.is_S_integral = true;  // no roots
    return v;
  }
  require_monic(B);
  v.resultant = checked_resultant(B, A);

  // Primes dividing lc(A) need the exact test; every other prime meets iff
  // it divides the resultant.
  const std::vector<mpz_class> lc_primes = prime_divisors(A.leading());
  mpz_class rest = abs(v.resultant);
  for (const auto& p : lc_primes) {
    mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    if (meeting_test_exact(B, A, p)) v.meeting_primes.push_back(p);
    v.method = IntegralityMethod::NewtonExact;
  }
  const Factorization f = factorize(rest);
  for (const auto& [p, e] : f.primes) v.meeting_primes.push_back(p);
  v.unfactored = f.unfactored;
  std::sort(v.meeting_primes.begin(), v.meeting_primes.end());

  // Exact decision: strip S from the generic part; any cofactor is outside S.
  mpz_class outside = rest;
  for (const auto& p : S.primes()) mpz_remove(outside.get_mpz_t(), outside.get_mpz_t(), p.get_mpz_t());
  bool ok = outside == 1;
  for (const auto& p : v.meeting_primes)
    if (mpz_divisible_p(A.leading().get_mpz_t(), p.get_mpz_t()) && !S.contains(p)) ok = false;
  v.is_S_integral = ok;
  return v;
}

CensusReport census(int d, int max_n, const AlgebraicNumber& alpha, const PrimeSet& S, const OrbitConfig& config) {
  if (max_n < 1) throw Error(ErrorKind::InvalidArgument, "max_n must be >= 1");
  if (auto cycle = find_critical_cycle(d, alpha.min_poly)) {
    throw Error(ErrorKind::HypothesisViolated,
                "alpha is post-critically finite (critical orbit repeats at steps " +
                    std::to_string(cycle->first) + ", " + std::to_string(cycle->second) + ")");
  }
  CensusReport rep;
  rep.d = d;
  rep.max_n = max_n;
  rep.alpha = alpha;
  rep.S = S;
  std::vector<FactorDescriptor> factors;
  for (int n = 1; n <= max_n; ++n) factors.push_back(exact_period_factor(d, n, config));
  for (int level = 3; level <= max_n; ++level)
    for (int m = 2; m < level; ++m) factors.push_back(misiurewicz_exact_factor(d, m, level - m, config));
  for (auto& f : factors) {
    CensusRow row{std::move(f), {}};
    row.verdict = is_S_integral(row.factor, alpha, S);
    if (row.verdict.is_S_integral) ++rep.s_integral_count;
    rep.rows.push_back(std::move(row));
  }
  rep.threshold = thm15_threshold(1.0, static_cast<long>(S.size()) + 1, alpha.degree());
  return rep;
}

std::string census_tsv(const CensusReport& report) {
  std::ostringstream out;
  out << "kind\tpreperiod\tperiod\tdegree\tmeeting_primes\tunfactored\tS_integral\tmethod\n";
  for (const auto& row : report.rows) {
    const FactorDescriptor& f = row.factor;
    const int preperiod = f.m;
    const int period = f.n - f.m;
    out << kind_name(f.kind) << '\t' << preperiod << '\t' << period << '\t' << f.poly.degree() << '\t'
        << primes_to_string(row.verdict.meeting_primes) << '\t' << primes_to_string(row.verdict.unfactored) << '\t'
        << (row.verdict.is_S_integral ? "yes" : "no") << '\t'
        << (row.verdict.method == IntegralityMethod::NewtonExact ? "newton-exact" : "resultant-fast") << '\n';
  }
  return out.str();
}

}  // namespace pcf
