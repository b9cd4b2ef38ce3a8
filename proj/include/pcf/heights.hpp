#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pcf/ball.hpp"
#include "pcf/polynomials.hpp"

namespace pcf {

/// An algebraic number: its minimal polynomial plus a ball isolating one
/// root. The other roots are its conjugates (the other complex embeddings).
struct AlgebraicNumber {
  IntPolynomial min_poly;  ///< primitive, squarefree, positive leading coefficient
  ComplexBall root_selector;
  std::size_t root_index = 0;  ///< position of the selected root in root_order

  long degree() const { return min_poly.degree(); }
  /// The rational value when degree() == 1.
  std::optional<Rational> as_rational() const;

  static AlgebraicNumber from_rational(const Rational& q, mpfr_prec_t prec = 256);
  /// Root `index` (in root_order) of a squarefree polynomial, isolated at
  /// `bits` of certification precision. The polynomial is made primitive.
  static AlgebraicNumber from_min_poly(const IntPolynomial& p, std::size_t index, long bits = 256);
};

/// Escape rate lim d^-k log|z_k|. When escaped is false the orbit stayed
/// below the escape radius for iterations_used steps (or the enclosure grew
/// too wide to tell); value is then 0 and proves nothing about membership.
struct EscapeRateResult {
  Real value;
  Real error_bound;
  long iterations_used = 0;
  bool escaped = false;
};

struct EscapeOptions {
  long max_iter = 10000;
  /// Precision is doubled on loss of enclosure up to this cap.
  mpfr_prec_t max_precision = 4096;
};

/// Escape radius max(2, (2|c|)^(1/d), 2^(1/(d-1))), rounded up.
Real escape_radius(int d, const Real& abs_c_upper);

/// Green's function of the family at c: iterate z <- z^d + c from z = c.
EscapeRateResult escape_rate_arch(int d, const ComplexBall& c, double target_error = 1e-30,
                                  const EscapeOptions& options = {});
EscapeRateResult escape_rate_arch(int d, const Rational& c, mpfr_prec_t prec = 128,
                                  double target_error = 1e-30);

/// Dynamical Green's function of z -> z^d + c, seeded at z.
EscapeRateResult local_height(int d, const ComplexBall& c, const ComplexBall& z,
                              double target_error = 1e-30, const EscapeOptions& options = {});

/// |lambda(z^d + c) - d lambda(z)| for the local height above.
Real local_height_functional_check(int d, const ComplexBall& c, const ComplexBall& z);

/// Root valuations of p at the prime q read off the Newton polygon:
/// (valuation, number of roots with that valuation), valuations increasing.
std::vector<std::pair<Rational, long>> newton_polygon_valuations(const IntPolynomial& p,
                                                                 const mpz_class& q);

/// (1 / deg) sum over roots of log max(1, |beta|_q): the q-adic escape rate
/// averaged over the conjugates of alpha.
Real green_nonarch(const AlgebraicNumber& alpha, const mpz_class& q, mpfr_prec_t prec = 256);
Real green_nonarch(const Rational& alpha, const mpz_class& q, mpfr_prec_t prec = 256);

struct HeightEstimate {
  Real value;
  Real error_bound;
};

/// (1/deg)(log|lc| + sum log+|beta_i|).
HeightEstimate weil_height(const AlgebraicNumber& alpha, long bits = 256);
/// (1/deg) sum log+|beta_i| plus the finite masses at the primes dividing lc.
HeightEstimate weil_height_local(const AlgebraicNumber& alpha, long bits = 256);

struct CanonicalHeightResult {
  Real value;
  Real error_bound;
  /// Some embedding neither escaped nor was certified bounded: value is a
  /// lower bound only.
  bool non_escape_undetermined = false;
  /// (m, n) with f^m(0) = f^n(0) when the critical orbit was found finite.
  std::optional<std::pair<int, int>> critical_cycle;
};

/// Critical canonical height of z^d + alpha at alpha: the average escape
/// rate over all archimedean embeddings plus the finite-place masses.
CanonicalHeightResult critical_canonical_height(int d, const AlgebraicNumber& alpha, long bits = 256);

}  // namespace pcf
