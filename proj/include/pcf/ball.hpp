#pragma once

#include "pcf/real.hpp"

namespace pcf {

/// Precision used for all radius arithmetic. Radii are always rounded up.
inline constexpr mpfr_prec_t kRadiusPrecision = 64;

/// Closed complex disk {z : |z - center| <= radius}. Arithmetic is outward
/// rounded: the result ball contains every value the exact operation can take
/// on the input balls, including the rounding error of the center.
class ComplexBall {
 public:
  explicit ComplexBall(mpfr_prec_t prec = 53);
  ComplexBall(BigComplex center, Real radius);

  static ComplexBall point(const BigComplex& z);
  static ComplexBall point(double re, double im, mpfr_prec_t prec);
  /// Ball around a rational real number; radius covers the conversion error.
  static ComplexBall from_rational(const mpq_class& q, mpfr_prec_t prec);

  const BigComplex& center() const { return center_; }
  const Real& radius() const { return radius_; }
  mpfr_prec_t precision() const { return center_.precision(); }

  /// Upper / lower bounds on |z| over the ball.
  Real abs_upper() const;
  Real abs_lower() const;

  bool contains(const BigComplex& z) const;
  bool contains_zero() const;
  bool disjoint(const ComplexBall& other) const;
  /// Ball nesting test: every point of this ball lies in `outer`.
  bool inside(const ComplexBall& outer) const;

  void add_error(const Real& err);

  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);

 private:
  BigComplex center_;
  Real radius_;
};

ComplexBall pow(const ComplexBall& z, unsigned long e);

/// Lower / upper bounds on |a - b| over two balls.
Real distance_lower(const ComplexBall& a, const ComplexBall& b);
Real distance_upper(const ComplexBall& a, const ComplexBall& b);

/// Lower bound on |a - b| for two exact points, evaluated at radius precision.
Real point_distance_lower(const BigComplex& a, const BigComplex& b);
/// Upper bound on |a - b| for two exact points, evaluated at radius precision.
Real point_distance_upper(const BigComplex& a, const BigComplex& b);
/// Upper bound on |z| for an exact point.
Real point_abs_upper(const BigComplex& z);
Real point_abs_lower(const BigComplex& z);

}  // namespace pcf
