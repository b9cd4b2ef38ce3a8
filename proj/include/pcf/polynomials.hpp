#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pcf {

/// Exact rational; gmpxx keeps it canonical (positive denominator, reduced).
using Rational = mpq_class;

/// Dense univariate polynomial over the integers, coefficients in ascending
/// degree order. The zero polynomial has no coefficients; otherwise the
/// leading coefficient is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial constant(const mpz_class& c);
  /// c * t^k
  static IntPolynomial monomial(const mpz_class& c, std::size_t k);
  static IntPolynomial variable() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
  std::span<const mpz_class> coeffs() const { return coeffs_; }
  /// Coefficient of t^i; zero beyond the degree.
  const mpz_class& coeff(std::size_t i) const;
  const mpz_class& leading() const;

  IntPolynomial derivative() const;
  /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
  mpz_class content() const;
  /// Polynomial divided by its content, with positive leading coefficient.
  IntPolynomial primitive_part() const;
  /// Largest absolute coefficient (the naive height H).
  mpz_class height() const;
  /// Bit length of the largest absolute coefficient.
  std::size_t max_coeff_bits() const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const IntPolynomial& o);
  IntPolynomial& operator*=(const mpz_class& s);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(IntPolynomial a, const mpz_class& s) { return a *= s; }
  friend IntPolynomial operator-(IntPolynomial a);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Human-readable rendering in the variable `var`, highest degree first.
  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const IntPolynomial& p);

IntPolynomial pow(const IntPolynomial& p, unsigned long e);

/// p(q(t)).
IntPolynomial compose(const IntPolynomial& p, const IntPolynomial& q);

/// Exact evaluation at a rational point.
Rational evaluate_exact(const IntPolynomial& p, const Rational& a);
/// Exact evaluation at an integer point.
mpz_class evaluate_exact(const IntPolynomial& p, const mpz_class& a);

/// r with p = q r over the integers; throws NotDivisible otherwise.
IntPolynomial divide_exact(const IntPolynomial& p, const IntPolynomial& q);

/// lc(q)^(deg p - deg q + 1) p mod q.
IntPolynomial pseudo_remainder(const IntPolynomial& p, const IntPolynomial& q);

/// Sylvester resultant, equal to the determinant of the Sylvester matrix
/// with the rows of p first: lc(p)^deg q lc(q)^deg p prod (a_i - b_j).
/// Computed with the subresultant pseudo-remainder sequence.
mpz_class resultant(const IntPolynomial& p, const IntPolynomial& q);

/// Greatest common divisor, primitive with positive leading coefficient
/// times the gcd of the contents.
IntPolynomial gcd(const IntPolynomial& p, const IntPolynomial& q);

/// p / gcd(p, p'), primitive with positive leading coefficient.
IntPolynomial squarefree_part(const IntPolynomial& p);

/// Squarefreeness test. Tries a reduction modulo a few primes first (a
/// squarefree image certifies squarefreeness over Q) and falls back to the
/// exact gcd.
bool is_squarefree(const IntPolynomial& p);

/// Canonical text form: header `deg=<n>`, then one decimal coefficient per
/// line in ascending order.
std::string serialize(const IntPolynomial& p);
IntPolynomial parse_polynomial(const std::string& text);

/// Polynomials over the prime field F_p, ascending coefficients in [0, p).
namespace modp {
using Poly = std::vector<unsigned long>;
Poly reduce(const IntPolynomial& f, unsigned long p);
Poly gcd(Poly a, Poly b, unsigned long p);
Poly derivative(const Poly& a, unsigned long p);
long degree(const Poly& a);
}  // namespace modp

}  // namespace pcf
