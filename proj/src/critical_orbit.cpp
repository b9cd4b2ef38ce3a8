#include "pcf/critical_orbit.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <vector>

#include "pcf/errors.hpp"

namespace pcf {
namespace {

// Memoized g_k per degree d; single writer, many readers.
class GleasonTable {
 public:
  IntPolynomial get(int d, int n) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(d);
      if (it != table_.end() && static_cast<int>(it->second.size()) > n) return it->second[n];
    }
    std::unique_lock lock(mutex_);
    auto& seq = table_[d];
    if (seq.empty()) {
      seq.push_back(IntPolynomial{});           // g_0 = 0
      seq.push_back(IntPolynomial::variable());  // g_1 = c
    }
    while (static_cast<int>(seq.size()) <= n) {
      IntPolynomial next = pow(seq.back(), static_cast<unsigned long>(d));
      next += IntPolynomial::variable();
      seq.push_back(std::move(next));
    }
    return seq[n];
  }

 private:
  std::shared_mutex mutex_;
  std::map<int, std::vector<IntPolynomial>> table_;
};

GleasonTable& table() {
  static GleasonTable t;
  return t;
}

void check_degree(int d, int n, const OrbitConfig& config) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "degree d must be >= 2");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 0");
  if (n >= 1 && checked_power(d, n - 1, config.degree_cap) < 0) {
    throw Error(ErrorKind::DegreeCapExceeded, "d^(n-1) = " + std::to_string(d) + "^" +
                                                  std::to_string(n - 1) + " exceeds cap " +
                                                  std::to_string(config.degree_cap));
  }
}

std::vector<int> proper_divisors(int n) {
  std::vector<int> out;
  for (int k = 1; k < n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

IntPolynomial remainder_monic(IntPolynomial p, const IntPolynomial& a) {
  const long da = a.degree();
  if (p.degree() < da) return p;
  std::vector<mpz_class> r(p.coeffs().begin(), p.coeffs().end());
  for (long k = static_cast<long>(r.size()) - 1; k >= da; --k) {
    const mpz_class t = r[static_cast<std::size_t>(k)];
    if (t == 0) continue;
    for (long j = 0; j <= da; ++j)
      mpz_submul(r[static_cast<std::size_t>(k - da + j)].get_mpz_t(), t.get_mpz_t(),
                 a.coeff(static_cast<std::size_t>(j)).get_mpz_t());
  }
  r.resize(static_cast<std::size_t>(da));
  return IntPolynomial(std::move(r));
}

}  // namespace

std::string FactorDescriptor::label() const {
  switch (kind) {
    case FactorKind::Gleason: return "gleason(n=" + std::to_string(n) + ")";
    case FactorKind::ExactPeriod: return "period(" + std::to_string(n) + ")";
    case FactorKind::Misiurewicz:
      return "misiurewicz(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")";
    case FactorKind::MisiurewiczExact:
      return "misiurewicz(m=" + std::to_string(m) + ",q=" + std::to_string(n - m) + ")";
  }
  return "?";
}

int moebius(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "moebius of non-positive integer");
  int result = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

long checked_power(long d, long k, long cap) {
  long v = 1;
  for (long i = 0; i < k; ++i) {
    if (v > cap / d) return -1;
    v *= d;
  }
  return v <= cap ? v : -1;
}

CriticalOrbitPolynomial gleason(int d, int n, const OrbitConfig& config) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "level n must be >= 1");
  check_degree(d, n, config);
  return {d, n, table().get(d, n)};
}

IntPolynomial preperiodic_poly(int d, int m, int n, const OrbitConfig& config) {
  if (m < 0 || n <= m) throw Error(ErrorKind::InvalidArgument, "need n > m >= 0");
  check_degree(d, n, config);
  return table().get(d, n) - table().get(d, m);
}

FactorDescriptor exact_period_factor(int d, int n, const OrbitConfig& config) {
  CriticalOrbitPolynomial g = gleason(d, n, config);
  IntPolynomial divisor = IntPolynomial::constant(1);
  for (int k : proper_divisors(n)) divisor *= exact_period_factor(d, k, config).poly;
  long expected = 0;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) expected += moebius(n / k) * checked_power(d, k - 1, config.degree_cap);

  FactorDescriptor f{FactorKind::ExactPeriod, d, 0, n, {}, expected};
  try {
    f.poly = divide_exact(g.poly, divisor);
  } catch (const Error& e) {
    throw Error(ErrorKind::FactorizationStructureViolated,
                "g_" + std::to_string(n) + " not divisible by its lower-period factors");
  }
  if (f.poly.degree() != expected) {
    throw Error(ErrorKind::FactorizationStructureViolated,
                "exact-period factor degree " + std::to_string(f.poly.degree()) +
                    " differs from Moebius count " + std::to_string(expected));
  }
  return f;
}

long misiurewicz_count(int d, int m, int n) {
  if (m < 2) return 0;
  const int g = std::gcd(m - 1, n - 1);
  long top = 1, low = 1;
  for (int i = 0; i < n - 2; ++i) top *= d;
  for (int i = 0; i < g - 1; ++i) low *= d;
  return (d - 1) * (top - low);
}

FactorDescriptor misiurewicz_factor(int d, int m, int n, const OrbitConfig& config) {
  if (m < 1 || n <= m) throw Error(ErrorKind::InvalidArgument, "need n > m >= 1");
  check_degree(d, n, config);
  FactorDescriptor f{FactorKind::Misiurewicz, d, m, n, IntPolynomial::constant(1),
                     misiurewicz_count(d, m, n)};
  if (m == 1) return f;

  // z_n = z_m and z_{n-1} != z_{m-1}: since z^d is the only dependence on
  // the previous point, z_{n-1} = w z_{m-1} for a d-th root of unity w != 1.
  // What else divides P_{m,n} / P_{m-1,n-1} is the periodic parameters with
  // z_{m-1} = z_{n-1} = 0, each with multiplicity exactly d - 1.
  const IntPolynomial upper = preperiodic_poly(d, m, n, config);
  const IntPolynomial lower = preperiodic_poly(d, m - 1, n - 1, config);
  const int g = std::gcd(m - 1, n - 1);
  try {
    f.poly = divide_exact(divide_exact(upper, lower), pow(table().get(d, g), static_cast<unsigned long>(d - 1)));
  } catch (const Error&) {
    throw Error(ErrorKind::FactorizationStructureViolated,
                "P_{m,n} / P_{m-1,n-1} / g_" + std::to_string(g) + "^(d-1) is not exact for " + f.label());
  }
  if (!is_squarefree(f.poly))
    throw Error(ErrorKind::FactorizationStructureViolated, f.label() + " is not squarefree");
  if (f.poly.degree() != f.expected_degree) {
    throw Error(ErrorKind::FactorizationStructureViolated,
                f.label() + " has degree " + std::to_string(f.poly.degree()) + ", expected " +
                    std::to_string(f.expected_degree));
  }
  return f;
}

FactorDescriptor misiurewicz_exact_factor(int d, int m, int q, const OrbitConfig& config) {
  if (m < 2 || q < 1) throw Error(ErrorKind::InvalidArgument, "need m >= 2 and q >= 1");
  FactorDescriptor base = misiurewicz_factor(d, m, m + q, config);
  IntPolynomial divisor = IntPolynomial::constant(1);
  for (int k : proper_divisors(q)) divisor *= misiurewicz_exact_factor(d, m, k, config).poly;
  long expected = 0;
  for (int k = 1; k <= q; ++k)
    if (q % k == 0) expected += moebius(q / k) * misiurewicz_count(d, m, m + k);

  FactorDescriptor f{FactorKind::MisiurewiczExact, d, m, m + q, {}, expected};
  try {
    f.poly = divide_exact(base.poly, divisor);
  } catch (const Error&) {
    throw Error(ErrorKind::FactorizationStructureViolated,
                base.label() + " not divisible by its lower-period factors");
  }
  if (f.poly.degree() != expected) {
    throw Error(ErrorKind::FactorizationStructureViolated,
                f.label() + " has degree " + std::to_string(f.poly.degree()) + ", expected " +
                    std::to_string(expected));
  }
  return f;
}

std::optional<std::pair<int, int>> find_critical_cycle(int d, const IntPolynomial& min_poly,
                                                       int max_steps, std::size_t max_bits) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "degree d must be >= 2");
  if (min_poly.degree() < 1) throw Error(ErrorKind::InvalidArgument, "minimal polynomial must be nonconstant");
  IntPolynomial a = min_poly.primitive_part();
  if (!a.is_monic()) return std::nullopt;

  const IntPolynomial c = remainder_monic(IntPolynomial::variable(), a);
  const std::size_t width = static_cast<std::size_t>(a.degree());
  auto key = [width](const IntPolynomial& z) {
    std::vector<mpz_class> k(width);
    for (std::size_t i = 0; i < width; ++i) k[i] = z.coeff(i);
    return k;
  };
  std::map<std::vector<mpz_class>, int> seen;
  IntPolynomial z;  // z_0 = 0
  seen.emplace(key(z), 0);
  for (int step = 1; step <= max_steps; ++step) {
    z = remainder_monic(pow(z, static_cast<unsigned long>(d)) + c, a);
    if (z.max_coeff_bits() > max_bits) return std::nullopt;
    auto [it, inserted] = seen.emplace(key(z), step);
    if (!inserted) return std::make_pair(it->second, step);
  }
  return std::nullopt;
}

}  // namespace pcf
