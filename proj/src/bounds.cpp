#include "pcf/bounds.hpp"

#include <cmath>
#include <sstream>

#include "pcf/critical_orbit.hpp"
#include "pcf/errors.hpp"

namespace pcf {
namespace {

Real from_long(long v, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_si(r.get(), v, MPFR_RNDN);
  return r;
}

}  // namespace

Real linear_forms_constant(long n, long d, mpfr_prec_t prec) {
  if (n < 1 || d < 1) throw Error(ErrorKind::InvalidArgument, "c_1 needs n >= 1 and d >= 1");
  Real e(prec), base(prec), r(prec), ld(prec);
  mpfr_set_ui(e.get(), 1, MPFR_RNDN);
  mpfr_exp(e.get(), e.get(), MPFR_RNDN);
  mpfr_mul_ui(base.get(), e.get(), static_cast<unsigned long>(16 * d), MPFR_RNDN);
  mpfr_pow_ui(r.get(), base.get(), static_cast<unsigned long>(3 * n + 2), MPFR_RNDN);
  mpfr_mul_ui(r.get(), r.get(), static_cast<unsigned long>(12 * d), MPFR_RNDN);
  ld = log(from_long(d, prec));
  if (ld < 1.0) mpfr_set_ui(ld.get(), 1, MPFR_RNDN);
  mpfr_mul(r.get(), r.get(), ld.get(), MPFR_RNDN);
  mpfr_mul(r.get(), r.get(), ld.get(), MPFR_RNDN);
  return r;
}

Real beg_lower_bound(const LinearFormInput& input, mpfr_prec_t prec) {
  const std::size_t n = input.heights.size();
  if (n < 2 || input.exponents.size() != n)
    throw Error(ErrorKind::InvalidArgument, "linear form needs n >= 2 heights and matching exponents");
  if (input.field_degree < 1) throw Error(ErrorKind::InvalidArgument, "field degree must be >= 1");
  if (input.place_norm < 2) throw Error(ErrorKind::InvalidArgument, "N(v) must be >= 2");
  bool nonzero = false;
  long big_b = 3;
  for (long b : input.exponents) {
    nonzero = nonzero || b != 0;
    big_b = std::max(big_b, std::labs(b));
  }
  if (!nonzero) throw Error(ErrorKind::InvalidArgument, "exponents must not all vanish");

  const Real D = from_long(input.field_degree, prec);
  Real floor_h = log(D * 3.0);
  floor_h = floor_h * floor_h * floor_h * D;
  floor_h = Real(2.0, prec) / floor_h;
  Real theta(1.0, prec);
  for (double h : input.heights) {
    if (h < 0) throw Error(ErrorKind::InvalidArgument, "heights must be nonnegative");
    theta *= max(Real(h, prec), floor_h);
  }
  const Real nv(input.place_norm, prec);
  Real r = linear_forms_constant(static_cast<long>(n), input.field_degree, prec);
  r *= nv / log(nv);
  r *= theta;
  r *= log(from_long(big_b, prec));
  return -r;
}

Real SeparationBound::value() const { return exp(log_value); }
Real SeparationBound::weak_value() const { return exp(log_weak_value); }

SeparationBound mahler_separation_bound(long dc, const Real& log_height, mpfr_prec_t prec) {
  if (dc < 2) throw Error(ErrorKind::InvalidArgument, "separation bound needs degree >= 2");
  if (log_height < 0.0) throw Error(ErrorKind::InvalidArgument, "height must be >= 1");
  const Real k = from_long(dc, prec);
  Real lh = log_height;
  lh.set_precision(prec);
  SeparationBound s{Real(prec), Real(prec)};
  // log sqrt(3) - (2 dc + 1)/2 log(dc + 1) + (1 - dc) log H
  s.log_value = log(Real(3.0, prec)) * 0.5 - (k * 2.0 + 1.0) * 0.5 * log(k + 1.0) + (Real(1.0, prec) - k) * lh;
  s.log_weak_value = -(k * log(k * 2.0)) + (Real(1.0, prec) - k) * lh;
  return s;
}

SeparationBound mahler_separation_bound(long dc, double height) {
  if (height < 1) throw Error(ErrorKind::InvalidArgument, "height must be >= 1");
  return mahler_separation_bound(dc, log(Real(height, 128)));
}

Real prop31_bound(double h_alpha, int d, long orbit_size, double eps, double C6, mpfr_prec_t prec) {
  if (orbit_size < 1 || eps <= 0 || d < 2)
    throw Error(ErrorKind::InvalidArgument, "need |G| >= 1, eps > 0, d >= 2");
  Real r(h_alpha, prec);
  r += Real(static_cast<double>(d), prec) / static_cast<double>(d - 1);
  r *= pow(from_long(orbit_size, prec), Real(8.0 + eps, prec));
  return r * C6;
}

BoundReport degree_lower_bound_check(int d, int n, long base_degree) {
  if (base_degree < 1) throw Error(ErrorKind::InvalidArgument, "base degree must be >= 1");
  const CriticalOrbitPolynomial g = gleason(d, n);
  BoundReport rep;
  rep.name = "degree_lower_bound";
  std::ostringstream in;
  in << "d=" << d << " n=" << n << " base=" << base_degree;
  const long full = checked_power(d, n - 1, OrbitConfig{}.degree_cap);
  rep.bound_value = Real(static_cast<double>(full), 64) / static_cast<double>(base_degree);
  rep.empirical_value = Real(static_cast<double>(g.poly.degree()), 64);
  bool ok = g.poly.degree() == full && *rep.empirical_value >= rep.bound_value;
  if (base_degree == 1) {
    const FactorDescriptor f = exact_period_factor(d, n);
    in << " exact_period_degree=" << f.poly.degree() << " moebius=" << f.expected_degree;
    ok = ok && f.poly.degree() == f.expected_degree;
  }
  rep.inputs = in.str();
  rep.satisfied = ok;
  return rep;
}

Real pcf_modulus_bound(int d, mpfr_prec_t prec) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "degree d must be >= 2");
  Real r(2.0, prec);
  mpfr_rootn_ui(r.get(), r.get(), static_cast<unsigned long>(d - 1), MPFR_RNDN);
  return r;
}

BoundReport pcf_modulus_check(int d, const std::vector<ComplexBall>& roots, double tolerance) {
  BoundReport rep;
  rep.name = "pcf_modulus";
  rep.inputs = "d=" + std::to_string(d) + " roots=" + std::to_string(roots.size());
  rep.bound_value = pcf_modulus_bound(d);
  Real worst(kRadiusPrecision);
  for (const auto& r : roots) {
    Real a = r.abs_upper();
    if (a > worst) worst = a;
  }
  rep.empirical_value = worst;
  rep.satisfied = worst <= rep.bound_value + tolerance;
  return rep;
}

Real thm15_threshold(double C1, long s_size, long field_degree, mpfr_prec_t prec) {
  if (s_size < 1 || field_degree < 1) throw Error(ErrorKind::InvalidArgument, "need |S| >= 1 and D >= 1");
  Real s = from_long(s_size, prec), D = from_long(field_degree, prec);
  Real r = s * s * s;
  Real d8(prec);
  mpfr_pow_ui(d8.get(), D.get(), 8, MPFR_RNDN);
  return r * d8 * C1;
}

}  // namespace pcf
