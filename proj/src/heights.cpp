#include "pcf/heights.hpp"

#include <algorithm>

#include "pcf/critical_orbit.hpp"
#include "pcf/errors.hpp"
#include "pcf/factor.hpp"
#include "pcf/rootfinder.hpp"

namespace pcf {
namespace {

// Enclosure of |z| over a ball at full precision: [lo, hi].
std::pair<Real, Real> abs_bounds(const ComplexBall& z, mpfr_prec_t prec) {
  Real lo(prec), hi(prec);
  const BigComplex& c = z.center();
  mpfr_hypot(lo.get(), c.re.get(), c.im.get(), MPFR_RNDD);
  mpfr_hypot(hi.get(), c.re.get(), c.im.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), z.radius().get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi.get(), z.radius().get(), MPFR_RNDU);
  if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
  return {std::move(lo), std::move(hi)};
}

ComplexBall with_precision(const ComplexBall& b, mpfr_prec_t prec) {
  BigComplex c = b.center();
  if (c.precision() < prec) c.set_precision(prec);
  return ComplexBall(std::move(c), b.radius());
}

Real log_up(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDU);
  return r;
}

Real log_down(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDD);
  return r;
}

// One attempt at fixed precision; nullopt when the enclosure became too wide
// to decide escape.
//
// Beyond B = max(2, (2|c|)^(1/d), 2^(1/(d-1))) we have |c| <= |z|^d / 2 and
// |z|^d / 2 >= |z|, so |z^d + c| >= |z|^d / 2 >= |z| and the orbit escapes
// monotonically. Writing z_{j+1} = z_j^d (1 + u_j) with |u_j| <= 1/2,
//   G = d^-k log|z_k| + sum_{j>=k} d^-(j+1) log|1 + u_j|,
// and |log|1 + u|| <= 2 log 2 |u| for |u| <= 1/2 with u_j nonincreasing,
// so the tail is at most 2 log 2 |u_k| / (d^k (d - 1)) <= log 2 / (d^k (d - 1)).
std::optional<EscapeRateResult> escape_attempt(int d, const ComplexBall& c_in, const ComplexBall& z_in,
                                               double target, long max_iter, mpfr_prec_t prec) {
  const ComplexBall c = with_precision(c_in, prec);
  ComplexBall z = with_precision(z_in, prec);
  const Real abs_c = c.abs_upper();
  const Real radius = escape_radius(d, abs_c);
  Real lost(1.0, kRadiusPrecision);
  mpfr_mul_2si(lost.get(), lost.get(), -16, MPFR_RNDN);

  Real u(kRadiusPrecision), tail(kRadiusPrecision), t(kRadiusPrecision);
  int extra = 0;
  for (long k = 0;; ++k) {
    const Real lo = z.abs_lower();
    if (lo >= radius) {
      // tail = 2 log 2 |c| / |z_k|^d / (d^k (d - 1))
      mpfr_pow_ui(t.get(), lo.get(), static_cast<unsigned long>(d), MPFR_RNDD);
      mpfr_div(u.get(), abs_c.get(), t.get(), MPFR_RNDU);
      mpfr_const_log2(t.get(), MPFR_RNDU);
      mpfr_mul(tail.get(), u.get(), t.get(), MPFR_RNDU);
      mpfr_mul_2ui(tail.get(), tail.get(), 1, MPFR_RNDU);
      mpfr_ui_pow_ui(t.get(), static_cast<unsigned long>(d), static_cast<unsigned long>(k), MPFR_RNDD);
      mpfr_div(tail.get(), tail.get(), t.get(), MPFR_RNDU);
      mpfr_div_ui(tail.get(), tail.get(), static_cast<unsigned long>(d - 1), MPFR_RNDU);
      if (tail.to_double(MPFR_RNDU) <= target / 2 || extra >= 64) {
        auto [alo, ahi] = abs_bounds(z, prec);
        Real dk_lo(prec), dk_hi(prec);
        mpfr_ui_pow_ui(dk_lo.get(), static_cast<unsigned long>(d), static_cast<unsigned long>(k), MPFR_RNDD);
        mpfr_ui_pow_ui(dk_hi.get(), static_cast<unsigned long>(d), static_cast<unsigned long>(k), MPFR_RNDU);
        Real vlo = log_down(alo), vhi = log_up(ahi);
        mpfr_div(vlo.get(), vlo.get(), dk_hi.get(), MPFR_RNDD);
        mpfr_div(vhi.get(), vhi.get(), dk_lo.get(), MPFR_RNDU);
        EscapeRateResult r;
        r.value = Real(prec);
        mpfr_add(r.value.get(), vlo.get(), vhi.get(), MPFR_RNDN);
        mpfr_mul_2si(r.value.get(), r.value.get(), -1, MPFR_RNDN);
        r.error_bound = Real(kRadiusPrecision);
        mpfr_sub(r.error_bound.get(), vhi.get(), vlo.get(), MPFR_RNDU);
        mpfr_mul_2si(r.error_bound.get(), r.error_bound.get(), -1, MPFR_RNDU);
        // Half an ulp for rounding the midpoint.
        mpfr_mul_2si(t.get(), r.value.get(), -static_cast<long>(prec), MPFR_RNDU);
        mpfr_abs(t.get(), t.get(), MPFR_RNDU);
        mpfr_add(r.error_bound.get(), r.error_bound.get(), t.get(), MPFR_RNDU);
        mpfr_add(r.error_bound.get(), r.error_bound.get(), tail.get(), MPFR_RNDU);
        r.iterations_used = k;
        r.escaped = true;
        return r;
      }
      ++extra;
    } else if (z.radius() > lost) {
      return std::nullopt;
    } else if (k >= max_iter) {
      // Bounded so far: G(z_0) = d^-k G(z_k) <= d^-k (log B + log 2) by the
      // maximum principle on |z| <= B.
      EscapeRateResult r;
      r.value = Real(prec);
      r.error_bound = Real(kRadiusPrecision);
      mpfr_log(t.get(), radius.get(), MPFR_RNDU);
      mpfr_add_d(t.get(), t.get(), 0.6931471805599453 + 1e-15, MPFR_RNDU);
      mpfr_ui_pow_ui(r.error_bound.get(), static_cast<unsigned long>(d), static_cast<unsigned long>(k), MPFR_RNDD);
      mpfr_div(r.error_bound.get(), t.get(), r.error_bound.get(), MPFR_RNDU);
      r.iterations_used = k;
      r.escaped = false;
      return r;
    }
    z = pow(z, static_cast<unsigned long>(d)) + c;
  }
}

Real log_plus_sum(const std::vector<ComplexBall>& roots, mpfr_prec_t prec, Real& err) {
  Real sum(prec), half(kRadiusPrecision);
  for (const auto& b : roots) {
    auto [lo, hi] = abs_bounds(b, prec);
    if (hi <= 1.0) continue;
    if (lo < 1.0) mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
    Real a = log_down(lo), z = log_up(hi);
    mpfr_add(sum.get(), sum.get(), a.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), z.get(), MPFR_RNDN);
    mpfr_sub(half.get(), z.get(), a.get(), MPFR_RNDU);
    mpfr_add(err.get(), err.get(), half.get(), MPFR_RNDU);
  }
  mpfr_mul_2si(sum.get(), sum.get(), -1, MPFR_RNDN);
  mpfr_mul_2si(err.get(), err.get(), -1, MPFR_RNDU);
  return sum;
}

std::vector<ComplexBall> embeddings(const AlgebraicNumber& alpha, long bits) {
  if (auto q = alpha.as_rational()) return {ComplexBall::from_rational(*q, bits)};
  RootOptions opts;
  opts.precision_bits = bits;
  return all_roots(alpha.min_poly, opts).roots;
}

// Rounding slack for a sum of `terms` roundings at `prec` bits of magnitude `mag`.
void add_rounding(Real& err, const Real& mag, long terms, mpfr_prec_t prec) {
  Real t(kRadiusPrecision);
  mpfr_abs(t.get(), mag.get(), MPFR_RNDU);
  mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDU);
  mpfr_mul_ui(t.get(), t.get(), static_cast<unsigned long>(terms + 2), MPFR_RNDU);
  mpfr_mul_2si(t.get(), t.get(), 1 - static_cast<long>(prec), MPFR_RNDU);
  mpfr_add(err.get(), err.get(), t.get(), MPFR_RNDU);
}

}  // namespace

std::optional<Rational> AlgebraicNumber::as_rational() const {
  if (min_poly.degree() != 1) return std::nullopt;
  Rational q(-min_poly.coeff(0), min_poly.coeff(1));
  q.canonicalize();
  return q;
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& q, mpfr_prec_t prec) {
  AlgebraicNumber a;
  a.min_poly = IntPolynomial(std::vector<mpz_class>{-q.get_num(), q.get_den()});
  a.root_selector = ComplexBall::from_rational(q, prec);
  a.root_index = 0;
  return a;
}

AlgebraicNumber AlgebraicNumber::from_min_poly(const IntPolynomial& p, std::size_t index, long bits) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "minimal polynomial must be nonconstant");
  AlgebraicNumber a;
  a.min_poly = p.primitive_part();
  if (a.min_poly.degree() == 1) {
    if (index != 0) throw Error(ErrorKind::InvalidArgument, "root index out of range");
    return from_rational(*a.as_rational(), bits);
  }
  RootOptions opts;
  opts.precision_bits = bits;
  RootSet roots = all_roots(a.min_poly, opts);
  if (index >= roots.roots.size()) throw Error(ErrorKind::InvalidArgument, "root index out of range");
  a.root_selector = roots.roots[index];
  a.root_index = index;
  return a;
}

Real escape_radius(int d, const Real& abs_c_upper) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "degree d must be >= 2");
  Real b(2.0, kRadiusPrecision), t(kRadiusPrecision);
  mpfr_mul_2ui(t.get(), abs_c_upper.get(), 1, MPFR_RNDU);
  mpfr_rootn_ui(t.get(), t.get(), static_cast<unsigned long>(d), MPFR_RNDU);
  if (t > b) b = t;
  mpfr_set_ui(t.get(), 2, MPFR_RNDU);
  mpfr_rootn_ui(t.get(), t.get(), static_cast<unsigned long>(d - 1), MPFR_RNDU);
  if (t > b) b = t;
  return b;
}

EscapeRateResult local_height(int d, const ComplexBall& c, const ComplexBall& z, double target_error,
                              const EscapeOptions& options) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "degree d must be >= 2");
  mpfr_prec_t prec = std::max(c.precision(), z.precision());
  for (; prec <= options.max_precision; prec *= 2) {
    if (auto r = escape_attempt(d, c, z, target_error, options.max_iter, prec)) return *r;
  }
  // Enclosure lost at every precision: report as not escaped, undecided.
  EscapeRateResult r;
  r.value = Real(prec);
  r.error_bound = Real(kRadiusPrecision);
  mpfr_set_inf(r.error_bound.get(), 1);
  r.iterations_used = 0;
  r.escaped = false;
  return r;
}

EscapeRateResult escape_rate_arch(int d, const ComplexBall& c, double target_error,
                                  const EscapeOptions& options) {
  return local_height(d, c, c, target_error, options);
}

EscapeRateResult escape_rate_arch(int d, const Rational& c, mpfr_prec_t prec, double target_error) {
  return escape_rate_arch(d, ComplexBall::from_rational(c, prec), target_error);
}

Real local_height_functional_check(int d, const ComplexBall& c, const ComplexBall& z) {
  const ComplexBall image = pow(z, static_cast<unsigned long>(d)) + c;
  const EscapeRateResult at_z = local_height(d, c, z);
  const EscapeRateResult at_image = local_height(d, c, image);
  Real r = at_image.value;
  mpfr_mul_ui(r.get(), at_z.value.get(), static_cast<unsigned long>(d), MPFR_RNDN);
  mpfr_sub(r.get(), at_image.value.get(), r.get(), MPFR_RNDN);
  return abs(r);
}

std::vector<std::pair<Rational, long>> newton_polygon_valuations(const IntPolynomial& p, const mpz_class& q) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "Newton polygon of zero");
  struct Pt {
    long i;
    long v;
  };
  std::vector<Pt> pts;
  for (long i = 0; i <= p.degree(); ++i) {
    const mpz_class& a = p.coeff(static_cast<std::size_t>(i));
    if (a != 0) pts.push_back({i, static_cast<long>(valuation(a, q))});
  }
  // Lower convex hull, left to right.
  std::vector<Pt> hull;
  for (const Pt& pt : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // Drop b when it is on or above the chord a-pt.
      if ((b.v - a.v) * (pt.i - a.i) >= (pt.v - a.v) * (b.i - a.i)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  std::vector<std::pair<Rational, long>> out;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const long len = hull[s + 1].i - hull[s].i;
    Rational val(hull[s].v - hull[s + 1].v, len);  // minus the slope
    val.canonicalize();
    out.emplace_back(val, len);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Real green_nonarch(const AlgebraicNumber& alpha, const mpz_class& q, mpfr_prec_t prec) {
  Rational mass = 0;
  for (const auto& [val, count] : newton_polygon_valuations(alpha.min_poly, q))
    if (val < 0) mass -= val * count;
  mass /= alpha.degree();
  Real r(mass, prec);
  Real lq = log_of(q, prec);
  mpfr_mul(r.get(), r.get(), lq.get(), MPFR_RNDN);
  return r;
}

Real green_nonarch(const Rational& alpha, const mpz_class& q, mpfr_prec_t prec) {
  return green_nonarch(AlgebraicNumber::from_rational(alpha, prec), q, prec);
}

HeightEstimate weil_height(const AlgebraicNumber& alpha, long bits) {
  const mpfr_prec_t prec = bits + 32;
  const auto roots = embeddings(alpha, bits);
  HeightEstimate h{Real(prec), Real(kRadiusPrecision)};
  Real arch = log_plus_sum(roots, prec, h.error_bound);
  Real lc = log_of(abs(alpha.min_poly.leading()), prec);
  mpfr_add(h.value.get(), arch.get(), lc.get(), MPFR_RNDN);
  mpfr_div_si(h.value.get(), h.value.get(), alpha.degree(), MPFR_RNDN);
  add_rounding(h.error_bound, h.value, static_cast<long>(roots.size()) * 3, prec);
  return h;
}

HeightEstimate weil_height_local(const AlgebraicNumber& alpha, long bits) {
  const mpfr_prec_t prec = bits + 32;
  const auto roots = embeddings(alpha, bits);
  HeightEstimate h{Real(prec), Real(kRadiusPrecision)};
  h.value = log_plus_sum(roots, prec, h.error_bound);
  mpfr_div_si(h.value.get(), h.value.get(), alpha.degree(), MPFR_RNDN);
  const mpz_class lc = alpha.min_poly.leading();
  const Factorization f = factorize(lc);
  if (!f.complete())
    throw Error(ErrorKind::InvalidArgument, "could not factor the leading coefficient " + lc.get_str());
  for (const auto& [q, e] : f.primes) {
    Real g = green_nonarch(alpha, q, prec);
    mpfr_add(h.value.get(), h.value.get(), g.get(), MPFR_RNDN);
  }
  add_rounding(h.error_bound, h.value, static_cast<long>(roots.size() + f.primes.size()) * 3, prec);
  return h;
}

CanonicalHeightResult critical_canonical_height(int d, const AlgebraicNumber& alpha, long bits) {
  const mpfr_prec_t prec = bits;
  CanonicalHeightResult out{Real(prec), Real(kRadiusPrecision), false, std::nullopt};
  out.critical_cycle = find_critical_cycle(d, alpha.min_poly);

  // The finite-orbit certificate makes every archimedean escape rate exactly
  // zero; otherwise each embedding is iterated.
  if (!out.critical_cycle) {
    Real half_ulp(kRadiusPrecision);
    mpfr_set_ui(half_ulp.get(), 1, MPFR_RNDN);
    mpfr_mul_2si(half_ulp.get(), half_ulp.get(), -bits / 2, MPFR_RNDN);
    for (const auto& beta : embeddings(alpha, bits)) {
      EscapeRateResult r = escape_rate_arch(d, beta, half_ulp.to_double());
      if (!r.escaped && !(r.error_bound <= half_ulp)) out.non_escape_undetermined = true;
      mpfr_add(out.value.get(), out.value.get(), r.value.get(), MPFR_RNDN);
      if (r.error_bound.is_finite())
        mpfr_add(out.error_bound.get(), out.error_bound.get(), r.error_bound.get(), MPFR_RNDU);
    }
    mpfr_div_si(out.value.get(), out.value.get(), alpha.degree(), MPFR_RNDN);
    mpfr_div_si(out.error_bound.get(), out.error_bound.get(), alpha.degree(), MPFR_RNDU);
  }
  const Factorization f = factorize(alpha.min_poly.leading());
  for (const auto& [q, e] : f.primes) {
    Real g = green_nonarch(alpha, q, prec);
    mpfr_add(out.value.get(), out.value.get(), g.get(), MPFR_RNDN);
  }
  return out;
}

}  // namespace pcf
