#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library beyond its value types.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Coeffs = std::vector<mpz_class>;  // ascending

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

inline Coeffs add(Coeffs a, const Coeffs& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

/// f^n(0) in the parameter c, by repeated schoolbook squaring.
inline Coeffs gleason(int d, int n) {
  Coeffs z;  // 0
  const Coeffs c = {0, 1};
  for (int k = 0; k < n; ++k) {
    Coeffs p = {1};
    for (int i = 0; i < d; ++i) p = mul(p, z);
    if (z.empty()) p.clear();
    z = add(p, c);
  }
  return z;
}

inline mpq_class horner(const Coeffs& a, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Determinant by fraction-free Bareiss elimination.
inline mpz_class bareiss(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Determinant of the Sylvester matrix of p and q, rows of p first.
inline mpz_class sylvester_resultant(const Coeffs& p, const Coeffs& q) {
  const std::size_t m = p.size() - 1, n = q.size() - 1, size = m + n;
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = p[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = q[n - i];
  return bareiss(std::move(s));
}

/// Escape rate d^-K log|z_K| for rational c, iterating z_0 = c exactly.
/// The truncation error is below d^-K (log 2) |c| / |z_K|^d.
inline double escape_rate(int d, const mpq_class& c, int K, mpfr_prec_t prec = 256) {
  mpq_class z = c;
  for (int k = 0; k < K; ++k) {
    mpq_class p = 1;
    for (int i = 0; i < d; ++i) p *= z;
    z = p + c;
  }
  mpfr_t num, den, out;
  mpfr_inits2(prec, num, den, out, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_z(num, z.get_num_mpz_t(), MPFR_RNDN);
  mpfr_set_z(den, z.get_den_mpz_t(), MPFR_RNDN);
  mpfr_abs(num, num, MPFR_RNDN);
  mpfr_log(num, num, MPFR_RNDN);
  mpfr_log(den, den, MPFR_RNDN);
  mpfr_sub(out, num, den, MPFR_RNDN);
  mpfr_div_d(out, out, std::pow(static_cast<double>(d), K), MPFR_RNDN);
  const double v = mpfr_get_d(out, MPFR_RNDN);
  mpfr_clears(num, den, out, static_cast<mpfr_ptr>(nullptr));
  return v;
}

/// Real root of a cubic with a single sign change on [lo, hi], by bisection.
template <class F>
double bisect(F f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0) == (f(mid) < 0)) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Roots of c^3 + 2c^2 + c + 1: the real root by bisection, the pair by the
/// quadratic formula on the deflated factor.
inline std::vector<std::complex<double>> period3_roots() {
  const double r = bisect([](double x) { return ((x + 2) * x + 1) * x + 1; }, -2.0, -1.5);
  // c^3 + 2c^2 + c + 1 = (c - r)(c^2 + b c + e)
  const double b = 2 + r, e = -1 / r;
  const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4 * e, 0));
  return {r, (-b + disc) / 2.0, (-b - disc) / 2.0};
}

}  // namespace oracle
