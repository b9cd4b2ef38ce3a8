#include "pcf/equidist.hpp"

#include <cmath>

#include "pcf/critical_orbit.hpp"
#include "pcf/errors.hpp"
#include "pcf/rootfinder.hpp"

namespace pcf {
namespace {

void require_not_pcf(int d, const AlgebraicNumber& alpha) {
  if (auto cycle = find_critical_cycle(d, alpha.min_poly)) {
    throw Error(ErrorKind::HypothesisViolated, "alpha is post-critically finite");
  }
}

// [lo, hi] for |a - b| over two balls, at precision prec.
std::pair<Real, Real> distance_bounds(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec) {
  Real dr(prec), di(prec), lo(prec), hi(prec), r(kRadiusPrecision);
  mpfr_sub(dr.get(), a.center().re.get(), b.center().re.get(), MPFR_RNDN);
  mpfr_sub(di.get(), a.center().im.get(), b.center().im.get(), MPFR_RNDN);
  mpfr_hypot(lo.get(), dr.get(), di.get(), MPFR_RNDD);
  mpfr_hypot(hi.get(), dr.get(), di.get(), MPFR_RNDU);
  // The two subtractions are within half an ulp each; fold that and the
  // radii into one slack term.
  mpfr_add(r.get(), a.radius().get(), b.radius().get(), MPFR_RNDU);
  Real ulp(kRadiusPrecision);
  mpfr_mul_2si(ulp.get(), hi.get(), 2 - static_cast<long>(prec), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), ulp.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), r.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi.get(), r.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

std::pair<Real, Real> abs_bounds(const ComplexBall& a, mpfr_prec_t prec) {
  ComplexBall zero(prec);
  return distance_bounds(a, zero, prec);
}

// log+ of an interval [lo, hi], as an interval.
std::pair<Real, Real> log_plus_bounds(const Real& lo, const Real& hi, mpfr_prec_t prec) {
  Real a(prec), b(prec);
  if (lo > 1.0) mpfr_log(a.get(), lo.get(), MPFR_RNDD);
  if (hi > 1.0) mpfr_log(b.get(), hi.get(), MPFR_RNDU);
  return {std::move(a), std::move(b)};
}

Real log_abs_rational(const Rational& q, mpfr_prec_t prec) {
  Real num = log_of(abs(q.get_num()), prec + 16);
  Real den = log_of(q.get_den(), prec + 16);
  Real r = num - den;
  r.set_precision(prec);
  return r;
}

Real log_plus_abs(const ComplexBall& a) {
  Real m = abs(a.center());
  return log_plus(m);
}

}  // namespace

Real avg_log_distance_vieta(int d, int n, const Rational& alpha, mpfr_prec_t prec) {
  if (d < 2 || n < 1) throw Error(ErrorKind::InvalidArgument, "need d >= 2 and n >= 1");
  // g_n(alpha) = f^n(0) = f^(n-1)(alpha)
  Rational z = alpha;
  mpz_class num, den;
  for (int k = 1; k < n; ++k) {
    mpz_pow_ui(num.get_mpz_t(), z.get_num_mpz_t(), static_cast<unsigned long>(d));
    mpz_pow_ui(den.get_mpz_t(), z.get_den_mpz_t(), static_cast<unsigned long>(d));
    // z^d + alpha = (num alpha_den + alpha_num den) / (den alpha_den)
    Rational next(num * alpha.get_den() + alpha.get_num() * den, den * alpha.get_den());
    next.canonicalize();
    z = std::move(next);
  }
  if (z == 0) throw Error(ErrorKind::KernelSingular, "alpha is a root of g_" + std::to_string(n));
  Real r = log_abs_rational(z, prec);
  Real dn(prec);
  mpfr_ui_pow_ui(dn.get(), static_cast<unsigned long>(d), static_cast<unsigned long>(n - 1), MPFR_RNDN);
  return r / dn;
}

KernelAverage avg_log_distance_roots(const std::vector<ComplexBall>& roots, const ComplexBall& alpha,
                                     const KernelSpec& kernel, mpfr_prec_t prec) {
  if (roots.empty()) throw Error(ErrorKind::InvalidArgument, "empty root list");
  if (kernel.kind == KernelKind::Truncated && !(kernel.tau > 0 && kernel.tau < 1))
    throw Error(ErrorKind::InvalidArgument, "tau must lie in (0, 1)");
  const mpfr_prec_t wp = prec + 32;
  Real sum(wp), err(kRadiusPrecision), half(kRadiusPrecision), lo_v(wp), hi_v(wp);
  const Real tau(kernel.tau, wp);
  std::pair<Real, Real> alpha_plus{Real(wp), Real(wp)};
  if (kernel.kind == KernelKind::Truncated) {
    auto [alo, ahi] = abs_bounds(alpha, wp);
    alpha_plus = log_plus_bounds(alo, ahi, wp);
  }
  for (const auto& x : roots) {
    auto [lo, hi] = distance_bounds(x, alpha, wp);
    if (kernel.kind == KernelKind::PlainLog) {
      if (lo.sign() <= 0) throw Error(ErrorKind::KernelSingular, "alpha's ball meets a root ball");
      mpfr_log(lo_v.get(), lo.get(), MPFR_RNDD);
      mpfr_log(hi_v.get(), hi.get(), MPFR_RNDU);
    } else {
      // -log max(tau, dist) is decreasing in dist.
      Real mlo = max(tau, lo), mhi = max(tau, hi);
      auto [xlo, xhi] = abs_bounds(x, wp);
      auto [plo, phi] = log_plus_bounds(xlo, xhi, wp);
      mpfr_log(mhi.get(), mhi.get(), MPFR_RNDU);
      mpfr_log(mlo.get(), mlo.get(), MPFR_RNDD);
      lo_v = plo + alpha_plus.first - mhi;
      hi_v = phi + alpha_plus.second - mlo;
    }
    sum += lo_v;
    sum += hi_v;
    mpfr_sub(half.get(), hi_v.get(), lo_v.get(), MPFR_RNDU);
    mpfr_add(err.get(), err.get(), half.get(), MPFR_RNDU);
  }
  const double count = static_cast<double>(roots.size());
  KernelAverage out{sum / (2.0 * count), Real(kRadiusPrecision)};
  mpfr_div_d(err.get(), err.get(), 2.0 * count, MPFR_RNDU);
  // Roundings of the sum: a few ulps per term relative to the running sum.
  Real slack(kRadiusPrecision);
  mpfr_abs(slack.get(), out.value.get(), MPFR_RNDU);
  mpfr_add_ui(slack.get(), slack.get(), 1, MPFR_RNDU);
  mpfr_mul_d(slack.get(), slack.get(), 8.0 * count, MPFR_RNDU);
  mpfr_mul_2si(slack.get(), slack.get(), -static_cast<long>(wp), MPFR_RNDU);
  mpfr_add(err.get(), err.get(), slack.get(), MPFR_RNDU);
  out.error_bound = err;
  out.value.set_precision(prec);
  return out;
}

Real truncated_kernel(const ComplexBall& x, const ComplexBall& alpha, double tau) {
  if (!(tau > 0 && tau < 1)) throw Error(ErrorKind::InvalidArgument, "tau must lie in (0, 1)");
  const mpfr_prec_t prec = std::max(x.precision(), alpha.precision());
  BigComplex diff(prec);
  mpfr_sub(diff.re.get(), x.center().re.get(), alpha.center().re.get(), MPFR_RNDN);
  mpfr_sub(diff.im.get(), x.center().im.get(), alpha.center().im.get(), MPFR_RNDN);
  return log_plus_abs(x) + log_plus_abs(alpha) - log(max(Real(tau, prec), abs(diff)));
}

DiscrepancyReport discrepancy_report(int d, int n, const AlgebraicNumber& alpha, double tau, double C,
                                     mpfr_prec_t prec) {
  if (!(tau > 0 && tau < 1)) throw Error(ErrorKind::InvalidArgument, "tau must lie in (0, 1)");
  require_not_pcf(d, alpha);
  DiscrepancyReport r;
  r.d = d;
  r.n = n;
  r.N = checked_power(d, n - 1, OrbitConfig{}.degree_cap);
  if (r.N < 0) throw Error(ErrorKind::DegreeCapExceeded, "d^(n-1) exceeds the degree cap");
  r.tau = tau;
  r.C = C;
  if (auto q = alpha.as_rational()) {
    r.alpha_label = q->get_str();
    r.empirical_avg = avg_log_distance_vieta(d, n, *q, prec);
  } else {
    r.alpha_label = alpha.min_poly.to_string() + "#" + std::to_string(alpha.root_index);
    r.numeric_path = true;
    const CriticalOrbitPolynomial g = gleason(d, n);
    RootOptions opts;
    opts.precision_bits = prec;
    const PCFParameterSet roots =
        pcf_parameters(FactorDescriptor{FactorKind::Gleason, d, 0, n, g.poly, g.poly.degree()}, opts);
    r.empirical_avg = avg_log_distance_roots(roots.roots, alpha.root_selector, KernelSpec{}, prec).value;
  }
  r.green_value = escape_rate_arch(d, alpha.root_selector, std::ldexp(1.0, 8 - static_cast<int>(prec))).value;
  r.green_value.set_precision(prec);
  r.discrepancy = abs(r.empirical_avg - r.green_value);

  const Real Nr(static_cast<double>(r.N), prec);
  Real shape = sqrt(log(Nr) / Nr) * (log_plus_abs(alpha.root_selector) + 1.0 / tau);
  r.rhs_bound = shape * C;
  if (shape.is_zero()) {
    r.fitted_C = Real(prec);
    if (!r.discrepancy.is_zero()) mpfr_set_inf(r.fitted_C.get(), 1);
  } else {
    r.fitted_C = r.discrepancy / shape;
  }
  r.pass = r.discrepancy <= r.rhs_bound;
  return r;
}

PairingCheck pairing_crosscheck(int d, const AlgebraicNumber& alpha, const PrimeSet& S, long bits) {
  require_not_pcf(d, alpha);
  const mpfr_prec_t prec = bits;
  PairingCheck out{Real(prec), Real(prec), Real(prec), Real(kRadiusPrecision), false};
  Real arch(prec), tol(kRadiusPrecision);
  std::vector<ComplexBall> betas;
  if (auto q = alpha.as_rational()) {
    betas.push_back(ComplexBall::from_rational(*q, bits));
  } else {
    RootOptions opts;
    opts.precision_bits = bits;
    betas = all_roots(alpha.min_poly, opts).roots;
  }
  for (const auto& beta : betas) {
    EscapeRateResult e = escape_rate_arch(d, beta, std::ldexp(1.0, 8 - static_cast<int>(prec)));
    arch += e.value;
    if (e.error_bound.is_finite()) mpfr_add(tol.get(), tol.get(), e.error_bound.get(), MPFR_RNDU);
  }
  out.pairing = arch / static_cast<double>(alpha.degree());
  for (const auto& p : S.primes()) out.pairing += green_nonarch(alpha, p, prec);

  CanonicalHeightResult h = critical_canonical_height(d, alpha, bits);
  out.canonical_height = h.value;
  out.difference = abs(out.pairing - out.canonical_height);
  mpfr_div_si(tol.get(), tol.get(), alpha.degree(), MPFR_RNDU);
  mpfr_add(tol.get(), tol.get(), h.error_bound.get(), MPFR_RNDU);
  // Rounding of the two sums.
  Real slack(kRadiusPrecision);
  mpfr_mul_2si(slack.get(), out.canonical_height.get(), 8 - static_cast<long>(prec), MPFR_RNDU);
  mpfr_abs(slack.get(), slack.get(), MPFR_RNDU);
  mpfr_add(tol.get(), tol.get(), slack.get(), MPFR_RNDU);
  out.tolerance = tol;
  out.consistent = out.difference <= out.tolerance;
  return out;
}

}  // namespace pcf
