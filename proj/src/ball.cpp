#include "pcf/ball.hpp"

#include <algorithm>

namespace pcf {
namespace {

Real rad_zero() { return Real(kRadiusPrecision); }

// Upper bound on |x| at radius precision.
Real mag_up(const Real& x) {
  Real r(kRadiusPrecision);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

void add_up(Real& acc, const Real& x) { mpfr_add(acc.get(), acc.get(), x.get(), MPFR_RNDU); }

Real mul_up(const Real& a, const Real& b) {
  Real r(kRadiusPrecision);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

// Bound on the rounding error committed when a component was rounded to
// nearest at precision `prec`: 2^(1-prec) |x|.
Real rounding_error(const Real& x, mpfr_prec_t prec) {
  Real r = mag_up(x);
  mpfr_mul_2si(r.get(), r.get(), 1 - static_cast<long>(prec), MPFR_RNDU);
  return r;
}

}  // namespace

ComplexBall::ComplexBall(mpfr_prec_t prec) : center_(prec), radius_(rad_zero()) {}

ComplexBall::ComplexBall(BigComplex center, Real radius)
    : center_(std::move(center)), radius_(kRadiusPrecision) {
  mpfr_set(radius_.get(), radius.get(), MPFR_RNDU);
}

ComplexBall ComplexBall::point(const BigComplex& z) { return ComplexBall(z, rad_zero()); }

ComplexBall ComplexBall::point(double re, double im, mpfr_prec_t prec) {
  return point(BigComplex(re, im, prec));
}

ComplexBall ComplexBall::from_rational(const mpq_class& q, mpfr_prec_t prec) {
  BigComplex c(prec);
  int inexact = mpfr_set_q(c.re.get(), q.get_mpq_t(), MPFR_RNDN);
  ComplexBall b(std::move(c), rad_zero());
  if (inexact != 0) b.radius_ = rounding_error(b.center_.re, prec);
  return b;
}

Real ComplexBall::abs_upper() const {
  Real r = point_abs_upper(center_);
  add_up(r, radius_);
  return r;
}

Real ComplexBall::abs_lower() const {
  Real r = point_abs_lower(center_);
  mpfr_sub(r.get(), r.get(), radius_.get(), MPFR_RNDD);
  if (r.sign() < 0) mpfr_set_zero(r.get(), 1);
  return r;
}

bool ComplexBall::contains(const BigComplex& z) const {
  return point_distance_upper(center_, z) <= radius_;
}

bool ComplexBall::contains_zero() const { return point_abs_lower(center_) <= radius_; }

bool ComplexBall::disjoint(const ComplexBall& other) const {
  return distance_lower(*this, other).sign() > 0;
}

bool ComplexBall::inside(const ComplexBall& outer) const {
  Real reach = point_distance_upper(center_, outer.center_);
  add_up(reach, radius_);
  return reach <= outer.radius_;
}

void ComplexBall::add_error(const Real& err) { add_up(radius_, mag_up(err)); }

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  BigComplex c(p);
  mpfr_add(c.re.get(), a.center_.re.get(), b.center_.re.get(), MPFR_RNDN);
  mpfr_add(c.im.get(), a.center_.im.get(), b.center_.im.get(), MPFR_RNDN);
  Real rad = a.radius_;
  add_up(rad, b.radius_);
  add_up(rad, rounding_error(c.re, p));
  add_up(rad, rounding_error(c.im, p));
  return ComplexBall(std::move(c), std::move(rad));
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  BigComplex c(p);
  mpfr_sub(c.re.get(), a.center_.re.get(), b.center_.re.get(), MPFR_RNDN);
  mpfr_sub(c.im.get(), a.center_.im.get(), b.center_.im.get(), MPFR_RNDN);
  Real rad = a.radius_;
  add_up(rad, b.radius_);
  add_up(rad, rounding_error(c.re, p));
  add_up(rad, rounding_error(c.im, p));
  return ComplexBall(std::move(c), std::move(rad));
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  Real t1(p), t2(p), t3(p), t4(p);
  mpfr_mul(t1.get(), a.center_.re.get(), b.center_.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.center_.im.get(), b.center_.im.get(), MPFR_RNDN);
  mpfr_mul(t3.get(), a.center_.re.get(), b.center_.im.get(), MPFR_RNDN);
  mpfr_mul(t4.get(), a.center_.im.get(), b.center_.re.get(), MPFR_RNDN);
  BigComplex c(p);
  mpfr_sub(c.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_add(c.im.get(), t3.get(), t4.get(), MPFR_RNDN);

  // Rounding: each product and each sum contributes at most 2^(1-p) of its
  // magnitude; doubling the product terms covers the perturbed inputs.
  Real err = rad_zero();
  for (const Real* t : {&t1, &t2, &t3, &t4}) add_up(err, rounding_error(*t, p));
  mpfr_mul_2ui(err.get(), err.get(), 1, MPFR_RNDU);
  add_up(err, rounding_error(c.re, p));
  add_up(err, rounding_error(c.im, p));

  // Propagation: |a| rb + |b| ra + ra rb.
  Real rad = mul_up(point_abs_upper(a.center_), b.radius_);
  add_up(rad, mul_up(point_abs_upper(b.center_), a.radius_));
  add_up(rad, mul_up(a.radius_, b.radius_));
  add_up(rad, err);
  return ComplexBall(std::move(c), std::move(rad));
}

ComplexBall pow(const ComplexBall& z, unsigned long e) {
  if (e == 0) return ComplexBall::point(1.0, 0.0, z.precision());
  ComplexBall result = z;
  for (unsigned long i = 1; i < e; ++i) result = result * z;
  return result;
}

Real point_abs_upper(const BigComplex& z) {
  Real r(kRadiusPrecision);
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDU);
  return r;
}

Real point_abs_lower(const BigComplex& z) {
  Real r(kRadiusPrecision);
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDD);
  return r;
}

Real point_distance_lower(const BigComplex& a, const BigComplex& b) {
  // Round the component differences toward zero so their magnitudes never
  // exceed the exact ones; then hypot rounded down.
  Real dr(kRadiusPrecision), di(kRadiusPrecision), out(kRadiusPrecision);
  mpfr_sub(dr.get(), a.re.get(), b.re.get(), MPFR_RNDZ);
  mpfr_sub(di.get(), a.im.get(), b.im.get(), MPFR_RNDZ);
  mpfr_hypot(out.get(), dr.get(), di.get(), MPFR_RNDD);
  return out;
}

Real point_distance_upper(const BigComplex& a, const BigComplex& b) {
  Real dr(kRadiusPrecision), di(kRadiusPrecision), out(kRadiusPrecision);
  mpfr_sub(dr.get(), a.re.get(), b.re.get(), MPFR_RNDA);
  mpfr_sub(di.get(), a.im.get(), b.im.get(), MPFR_RNDA);
  mpfr_hypot(out.get(), dr.get(), di.get(), MPFR_RNDU);
  return out;
}

Real distance_lower(const ComplexBall& a, const ComplexBall& b) {
  Real d = point_distance_lower(a.center(), b.center());
  mpfr_sub(d.get(), d.get(), a.radius().get(), MPFR_RNDD);
  mpfr_sub(d.get(), d.get(), b.radius().get(), MPFR_RNDD);
  return d;
}

Real distance_upper(const ComplexBall& a, const ComplexBall& b) {
  Real d = point_distance_upper(a.center(), b.center());
  add_up(d, a.radius());
  add_up(d, b.radius());
  return d;
}

}  // namespace pcf
