#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>

namespace pcf {

/// Arbitrary-precision real backed by an MPFR value. Each Real owns its own
/// precision; binary operators produce a result at the larger of the two.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 53);
  Real(double x, mpfr_prec_t prec);
  Real(const mpz_class& x, mpfr_prec_t prec);
  Real(const mpq_class& x, mpfr_prec_t prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  /// Changes precision, rounding the current value to nearest.
  void set_precision(mpfr_prec_t prec);

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Decimal rendering with `digits` significant digits.
  std::string to_string(int digits = 20) const;
  /// Exact hexadecimal rendering ("0x1.8p+1" style); round-trips via from_hex.
  std::string to_hex() const;
  static Real from_hex(const std::string& text, mpfr_prec_t prec);
  static Real from_string(const std::string& text, mpfr_prec_t prec);

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, double b);
  friend Real operator/(const Real& a, double b);
  friend Real operator+(const Real& a, double b);
  friend Real operator-(const Real& a, double b);
  friend Real operator-(const Real& a);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, double b);
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real pow(const Real& x, const Real& y);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
/// log max(1, x) for x >= 0.
Real log_plus(const Real& x);
Real const_log2(mpfr_prec_t prec);
Real const_pi(mpfr_prec_t prec);
/// Natural log of a positive integer, rounded to nearest.
Real log_of(const mpz_class& x, mpfr_prec_t prec);

/// Complex number with Real parts; both parts share one precision.
struct BigComplex {
  Real re;
  Real im;

  explicit BigComplex(mpfr_prec_t prec = 53) : re(prec), im(prec) {}
  BigComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
  BigComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  void set_precision(mpfr_prec_t prec) {
    re.set_precision(prec);
    im.set_precision(prec);
  }
};

/// |z| rounded to nearest at the precision of z.
Real abs(const BigComplex& z);

}  // namespace pcf
