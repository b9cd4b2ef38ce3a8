#include "pcf/rootfinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "pcf/errors.hpp"

namespace pcf {
namespace {

using cd = std::complex<double>;

constexpr double kAngleOffset = 0.4;

double log_abs(const mpz_class& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

cd to_cd(const BigComplex& z) { return {z.re.to_double(), z.im.to_double()}; }

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Starting points on circles read off the upper convex hull of
// (i, log|a_i|): each hull edge of horizontal length m contributes m points
// on a circle of the radius its slope predicts.
std::vector<cd> initial_points(const IntPolynomial& p) {
  const long n = p.degree();
  std::vector<double> logs(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) logs[static_cast<std::size_t>(i)] = log_abs(p.coeff(static_cast<std::size_t>(i)));

  std::vector<long> hull;
  for (long i = 0; i <= n; ++i) {
    if (!std::isfinite(logs[static_cast<std::size_t>(i)])) continue;
    while (hull.size() >= 2) {
      const long a = hull[hull.size() - 2], b = hull.back();
      const double la = logs[static_cast<std::size_t>(a)], lb = logs[static_cast<std::size_t>(b)];
      const double li = logs[static_cast<std::size_t>(i)];
      // Drop b when it lies on or below the chord a-i.
      if ((lb - la) * static_cast<double>(i - a) <= (li - la) * static_cast<double>(b - a)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  std::vector<cd> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < hull.front(); ++k) pts.emplace_back(0.0, 0.0);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const long i = hull[s], j = hull[s + 1];
    const long m = j - i;
    const double radius =
        std::exp((logs[static_cast<std::size_t>(i)] - logs[static_cast<std::size_t>(j)]) / static_cast<double>(m));
    for (long t = 0; t < m; ++t) {
      const double angle = two_pi * static_cast<double>(t) / static_cast<double>(m) + kAngleOffset;
      pts.push_back(std::polar(radius, angle));
    }
  }
  return pts;
}

bool tiny_step(cd w, cd z) { return std::abs(w) <= 1e-14 * (std::abs(z) + 1e-12); }

// Small but no longer shrinking: double noise floor reached.
bool stalled_step(double step, double prev, cd z) {
  return step <= 1e-9 * (std::abs(z) + 1e-6) && step >= 0.5 * prev;
}

void aberth_double(const RootTarget& target, std::vector<cd>& z, int max_sweeps) {
  const std::size_t n = z.size();
  std::vector<char> done(n, 0);
  std::vector<double> prev(n, std::numeric_limits<double>::infinity());
  std::size_t remaining = n;
  for (int sweep = 0; sweep < max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      cd N = target.newton_double(z[i]);
      if (!finite(N)) {
        z[i] *= cd(1.0 + 1e-7, 1e-7);
        z[i] += cd(1e-9, 0.0);
        continue;
      }
      cd S = 0.0;
      bool clash = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const cd diff = z[i] - z[j];
        if (diff == 0.0) {
          clash = true;
          break;
        }
        S += 1.0 / diff;
      }
      if (clash) {
        z[i] += cd(1e-7 * (std::abs(z[i]) + 1e-3), 1e-7);
        continue;
      }
      const cd w = N / (1.0 - N * S);
      if (!finite(w)) continue;
      z[i] -= w;
      const double step = std::abs(w);
      if (tiny_step(w, z[i]) || stalled_step(step, prev[i], z[i])) {
        done[i] = 1;
        --remaining;
      }
      prev[i] = step;
    }
  }
}

long exponent_of(const Real& x) {
  if (x.is_zero()) return std::numeric_limits<long>::min() / 4;
  return static_cast<long>(mpfr_get_exp(x.get()));
}

long exponent_of(const BigComplex& z) { return std::max(exponent_of(z.re), exponent_of(z.im)); }

// Multiprecision Aberth sweeps. The Aberth sum only perturbs the step to
// second order in the Newton correction, so it is accumulated in double from
// double shadows of the iterates; the correction itself is multiprecision.
void aberth_mp(const RootTarget& target, std::vector<BigComplex>& z, long prec, int max_sweeps) {
  const std::size_t n = z.size();
  std::vector<cd> shadow(n);
  for (std::size_t i = 0; i < n; ++i) shadow[i] = to_cd(z[i]);
  std::vector<char> done(n, 0);
  std::vector<long> prev(n, std::numeric_limits<long>::max());
  std::size_t remaining = n;
  BigComplex N(prec), w(prec);
  Real t(prec);
  for (int sweep = 0; sweep < max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      target.newton_mp(z[i], N);
      if (!N.re.is_finite() || !N.im.is_finite()) {
        mpfr_mul_d(z[i].re.get(), z[i].re.get(), 1.0 + 1e-20, MPFR_RNDN);
        mpfr_add_d(z[i].im.get(), z[i].im.get(), 1e-20, MPFR_RNDN);
        shadow[i] = to_cd(z[i]);
        continue;
      }
      cd S = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const cd diff = shadow[i] - shadow[j];
        if (diff != 0.0) S += 1.0 / diff;
      }
      cd Nd = to_cd(N);
      if (!finite(Nd)) Nd = 0.0;
      const cd f = 1.0 / (1.0 - Nd * S);
      // w = N * f
      mpfr_mul_d(w.re.get(), N.re.get(), f.real(), MPFR_RNDN);
      mpfr_mul_d(t.get(), N.im.get(), f.imag(), MPFR_RNDN);
      mpfr_sub(w.re.get(), w.re.get(), t.get(), MPFR_RNDN);
      mpfr_mul_d(w.im.get(), N.re.get(), f.imag(), MPFR_RNDN);
      mpfr_mul_d(t.get(), N.im.get(), f.real(), MPFR_RNDN);
      mpfr_add(w.im.get(), w.im.get(), t.get(), MPFR_RNDN);
      mpfr_sub(z[i].re.get(), z[i].re.get(), w.re.get(), MPFR_RNDN);
      mpfr_sub(z[i].im.get(), z[i].im.get(), w.im.get(), MPFR_RNDN);
      shadow[i] = to_cd(z[i]);

      const long ew = exponent_of(w);
      const long scale = std::max(0L, exponent_of(z[i]));
      const bool converged = ew <= 6 - prec + scale;
      // Stalled at the evaluation noise floor, but already well below the
      // certification radius: further sweeps cannot help.
      const bool stalled = ew >= prev[i] - 1 && ew <= -prec / 2 - 16 + scale;
      prev[i] = ew;
      if (converged || stalled) {
        done[i] = 1;
        --remaining;
      }
    }
  }
}

// Lower bound on |a - b| using preallocated radius-precision scratch.
struct DistanceScratch {
  Real dr{kRadiusPrecision}, di{kRadiusPrecision}, out{kRadiusPrecision};
  void lower(const BigComplex& a, const BigComplex& b) {
    mpfr_sub(dr.get(), a.re.get(), b.re.get(), MPFR_RNDZ);
    mpfr_sub(di.get(), a.im.get(), b.im.get(), MPFR_RNDZ);
    mpfr_hypot(out.get(), dr.get(), di.get(), MPFR_RNDD);
  }
};

// Gerschgorin inclusion for the Weierstrass matrix diag(z) - W 1^T: every
// root lies in a disk |x - z_i| <= n |W_i| with W_i = p(z_i) / (lc prod (z_i - z_j)),
// and a disk disjoint from the others holds exactly one root.
bool certify(const RootTarget& target, const std::vector<BigComplex>& z, long bits,
             std::vector<ComplexBall>& out) {
  const std::size_t n = z.size();
  const IntPolynomial& p = target.polynomial();
  Real lc(kRadiusPrecision);
  mpfr_set_z(lc.get(), p.leading().get_mpz_t(), MPFR_RNDD);
  mpfr_abs(lc.get(), lc.get(), MPFR_RNDD);

  std::vector<Real> radii(n, Real(kRadiusPrecision));
  DistanceScratch ds;
  Real prod(kRadiusPrecision), bound(kRadiusPrecision);
  for (std::size_t i = 0; i < n; ++i) {
    mpfr_set(prod.get(), lc.get(), MPFR_RNDD);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      ds.lower(z[i], z[j]);
      mpfr_mul(prod.get(), prod.get(), ds.out.get(), MPFR_RNDD);
    }
    if (prod.sign() <= 0) return false;
    Real pv = target.abs_upper(z[i]);
    if (!pv.is_finite()) return false;
    mpfr_div(radii[i].get(), pv.get(), prod.get(), MPFR_RNDU);
    mpfr_mul_ui(radii[i].get(), radii[i].get(), n, MPFR_RNDU);

    // radius <= 2^(-bits/2) (1 + |z_i|)
    Real mag = point_abs_lower(z[i]);
    mpfr_add_ui(bound.get(), mag.get(), 1, MPFR_RNDD);
    mpfr_mul_2si(bound.get(), bound.get(), -bits / 2, MPFR_RNDD);
    if (radii[i] > bound) return false;
  }

  // Pairwise disjointness, pruned by a sweep over the real parts.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mpfr_cmp(z[a].re.get(), z[b].re.get()) < 0;
  });
  Real rmax(kRadiusPrecision);
  for (const auto& r : radii)
    if (r > rmax) rmax = r;
  Real gap(kRadiusPrecision), reach(kRadiusPrecision);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    mpfr_add(reach.get(), radii[i].get(), rmax.get(), MPFR_RNDU);
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t j = order[b];
      mpfr_sub(gap.get(), z[j].re.get(), z[i].re.get(), MPFR_RNDD);
      if (gap > reach) break;
      ds.lower(z[i], z[j]);
      mpfr_sub(ds.out.get(), ds.out.get(), radii[i].get(), MPFR_RNDD);
      mpfr_sub(ds.out.get(), ds.out.get(), radii[j].get(), MPFR_RNDD);
      if (ds.out.sign() <= 0) return false;
    }
  }

  out.clear();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(z[i], radii[i]);
  return true;
}

// Integer polynomials have conjugation-invariant root sets. Pair each
// approximation with the one nearest its conjugate (mutually nearest only),
// average the pair, and put self-paired points on the real axis; certifying
// the adjusted centers then gives exactly conjugate-symmetric output.
std::vector<BigComplex> symmetrized(const std::vector<BigComplex>& z) {
  const std::size_t n = z.size();
  std::vector<cd> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = cd(z[i].re.to_double(), z[i].im.to_double());
  auto nearest_to_conj = [&](std::size_t i) {
    std::size_t best = i;
    double dist = std::abs(w[i] - std::conj(w[i]));
    for (std::size_t k = 0; k < n; ++k) {
      const double d = std::abs(w[k] - std::conj(w[i]));
      if (d < dist) dist = d, best = k;
    }
    return best;
  };
  std::vector<BigComplex> out = z;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    const std::size_t j = nearest_to_conj(i);
    if (j == i) {
      mpfr_set_zero(out[i].im.get(), 1);
      done[i] = true;
    } else if (!done[j] && nearest_to_conj(j) == i) {
      BigComplex& a = out[i];
      BigComplex& b = out[j];
      mpfr_add(a.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
      mpfr_div_2ui(a.re.get(), a.re.get(), 1, MPFR_RNDN);
      mpfr_sub(a.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
      mpfr_div_2ui(a.im.get(), a.im.get(), 1, MPFR_RNDN);
      mpfr_set(b.re.get(), a.re.get(), MPFR_RNDN);
      mpfr_neg(b.im.get(), a.im.get(), MPFR_RNDN);
      done[i] = done[j] = true;
    }
  }
  return out;
}

// One multiprecision complex step z <- z * w, with scratch t.
void cmul(BigComplex& z, const BigComplex& w, Real& t) {
  mpfr_fmms(t.get(), z.re.get(), w.re.get(), z.im.get(), w.im.get(), MPFR_RNDN);
  mpfr_fmma(z.im.get(), z.re.get(), w.im.get(), z.im.get(), w.re.get(), MPFR_RNDN);
  mpfr_swap(z.re.get(), t.get());
}

// out = a / b
void cdiv(BigComplex& out, const BigComplex& a, const BigComplex& b, Real& t1, Real& t2) {
  mpfr_fmma(t1.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(t2.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(out.im.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), t2.get(), t1.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), t1.get(), MPFR_RNDN);
}

}  // namespace

std::vector<std::complex<double>> RootTarget::initial_points() const {
  return pcf::initial_points(polynomial());
}

bool root_order(const ComplexBall& a, const ComplexBall& b) {
  int c = mpfr_cmp(a.center().re.get(), b.center().re.get());
  if (c != 0) return c < 0;
  c = mpfr_cmp(a.center().im.get(), b.center().im.get());
  if (c != 0) return c < 0;
  return a.radius() < b.radius();
}

HornerTarget::HornerTarget(IntPolynomial p) : p_(std::move(p)), dp_(p_.derivative()) {
  const long bits = static_cast<long>(p_.max_coeff_bits());
  const long shift = bits > 900 ? bits - 900 : 0;
  scaled_.resize(p_.coeffs().size());
  for (std::size_t i = 0; i < scaled_.size(); ++i) {
    long e = 0;
    const double m = mpz_get_d_2exp(&e, p_.coeff(i).get_mpz_t());
    scaled_[i] = std::ldexp(m, static_cast<int>(e - shift));
  }
}

std::complex<double> HornerTarget::newton_double(std::complex<double> z) const {
  const long n = p_.degree();
  if (std::abs(z) <= 1.0) {
    cd v = scaled_.back(), dv = 0.0;
    for (long i = n - 1; i >= 0; --i) {
      dv = dv * z + v;
      v = v * z + scaled_[static_cast<std::size_t>(i)];
    }
    return v / dv;
  }
  // Reversed polynomial in w = 1/z keeps the evaluation bounded.
  const cd w = 1.0 / z;
  cd q = scaled_[0], dq = 0.0;
  for (long i = 1; i <= n; ++i) {
    dq = dq * w + q;
    q = q * w + scaled_[static_cast<std::size_t>(i)];
  }
  return q / (w * (static_cast<double>(n) * q - w * dq));
}

void HornerTarget::newton_mp(const BigComplex& z, BigComplex& out) const {
  const mpfr_prec_t prec = out.precision();
  BigComplex v(prec), dv(prec);
  Real t(prec), t2(prec);
  mpfr_set_z(v.re.get(), p_.leading().get_mpz_t(), MPFR_RNDN);
  for (long i = p_.degree() - 1; i >= 0; --i) {
    cmul(dv, z, t);
    mpfr_add(dv.re.get(), dv.re.get(), v.re.get(), MPFR_RNDN);
    mpfr_add(dv.im.get(), dv.im.get(), v.im.get(), MPFR_RNDN);
    cmul(v, z, t);
    mpfr_add_z(v.re.get(), v.re.get(), p_.coeff(static_cast<std::size_t>(i)).get_mpz_t(), MPFR_RNDN);
  }
  cdiv(out, v, dv, t, t2);
}

Real HornerTarget::abs_upper(const BigComplex& z) const {
  const mpfr_prec_t prec = z.precision();
  BigComplex v(prec);
  Real t(prec);
  mpfr_set_z(v.re.get(), p_.leading().get_mpz_t(), MPFR_RNDN);
  for (long i = p_.degree() - 1; i >= 0; --i) {
    cmul(v, z, t);
    mpfr_add_z(v.re.get(), v.re.get(), p_.coeff(static_cast<std::size_t>(i)).get_mpz_t(), MPFR_RNDN);
  }
  // Horner running bound: |computed - exact| <= (4n + 8) 2^-prec sum |a_i| |z|^i.
  Real az = point_abs_upper(z);
  Real acc(kRadiusPrecision), coef(kRadiusPrecision);
  for (long i = p_.degree(); i >= 0; --i) {
    mpfr_mul(acc.get(), acc.get(), az.get(), MPFR_RNDU);
    mpfr_set_z(coef.get(), p_.coeff(static_cast<std::size_t>(i)).get_mpz_t(), MPFR_RNDA);
    mpfr_abs(coef.get(), coef.get(), MPFR_RNDU);
    mpfr_add(acc.get(), acc.get(), coef.get(), MPFR_RNDU);
  }
  mpfr_mul_ui(acc.get(), acc.get(), static_cast<unsigned long>(4 * p_.degree() + 8), MPFR_RNDU);
  mpfr_mul_2si(acc.get(), acc.get(), -static_cast<long>(prec), MPFR_RNDU);
  Real out = point_abs_upper(v);
  mpfr_add(out.get(), out.get(), acc.get(), MPFR_RNDU);
  return out;
}

CriticalOrbitTarget::CriticalOrbitTarget(int d, std::vector<OrbitTerm> terms, IntPolynomial poly)
    : d_(d), terms_(std::move(terms)), levels_(0), p_(std::move(poly)) {
  for (const auto& t : terms_) {
    if (t.a < 0 || t.b <= t.a) throw Error(ErrorKind::InvalidArgument, "orbit term needs 0 <= a < b");
    levels_ = std::max(levels_, t.b);
  }
}

std::complex<double> CriticalOrbitTarget::newton_double(std::complex<double> c) const {
  // z_k, dz_k/dc; past 1e100 only the log-derivative dz/z is tracked, and
  // z_b - z_a = z_b to double precision.
  std::vector<cd> z(static_cast<std::size_t>(levels_) + 1, 0.0), dz(z.size(), 0.0), ratio(z.size(), 0.0);
  std::vector<bool> huge(z.size(), false);
  for (int k = 1; k <= levels_; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    if (!huge[i - 1]) {
      cd zpow = 1.0;
      for (int j = 0; j < d_ - 1; ++j) zpow *= z[i - 1];
      dz[i] = static_cast<double>(d_) * zpow * dz[i - 1] + 1.0;
      z[i] = zpow * z[i - 1] + c;
      if (std::abs(z[i]) > 1e100) {
        huge[i] = true;
        ratio[i] = dz[i] / z[i];
      }
    } else {
      huge[i] = true;
      ratio[i] = ratio[i - 1] * static_cast<double>(d_);
    }
  }
  cd logd = 0.0;
  for (const auto& t : terms_) {
    const std::size_t a = static_cast<std::size_t>(t.a), b = static_cast<std::size_t>(t.b);
    cd term;
    if (huge[b]) {
      term = ratio[b];
    } else {
      const cd diff = z[b] - z[a];
      if (diff == 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
      term = (dz[b] - dz[a]) / diff;
    }
    logd += static_cast<double>(t.e) * term;
  }
  return 1.0 / logd;
}

void CriticalOrbitTarget::newton_mp(const BigComplex& c, BigComplex& out) const {
  const mpfr_prec_t prec = out.precision();
  std::vector<BigComplex> z(static_cast<std::size_t>(levels_) + 1, BigComplex(prec)), dz(z);
  BigComplex zpow(prec), logd(prec), q(prec), num(prec), den(prec);
  Real t(prec), t2(prec);
  for (int k = 1; k <= levels_; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    mpfr_set_ui(zpow.re.get(), 1, MPFR_RNDN);
    mpfr_set_ui(zpow.im.get(), 0, MPFR_RNDN);
    for (int j = 0; j < d_ - 1; ++j) cmul(zpow, z[i - 1], t);
    // dz_k = d z_(k-1)^(d-1) dz_(k-1) + 1
    dz[i] = dz[i - 1];
    cmul(dz[i], zpow, t);
    mpfr_mul_ui(dz[i].re.get(), dz[i].re.get(), static_cast<unsigned long>(d_), MPFR_RNDN);
    mpfr_mul_ui(dz[i].im.get(), dz[i].im.get(), static_cast<unsigned long>(d_), MPFR_RNDN);
    mpfr_add_ui(dz[i].re.get(), dz[i].re.get(), 1, MPFR_RNDN);
    // z_k = z_(k-1)^d + c
    z[i] = z[i - 1];
    cmul(z[i], zpow, t);
    mpfr_add(z[i].re.get(), z[i].re.get(), c.re.get(), MPFR_RNDN);
    mpfr_add(z[i].im.get(), z[i].im.get(), c.im.get(), MPFR_RNDN);
  }
  for (const auto& term : terms_) {
    const std::size_t a = static_cast<std::size_t>(term.a), b = static_cast<std::size_t>(term.b);
    mpfr_sub(num.re.get(), dz[b].re.get(), dz[a].re.get(), MPFR_RNDN);
    mpfr_sub(num.im.get(), dz[b].im.get(), dz[a].im.get(), MPFR_RNDN);
    mpfr_sub(den.re.get(), z[b].re.get(), z[a].re.get(), MPFR_RNDN);
    mpfr_sub(den.im.get(), z[b].im.get(), z[a].im.get(), MPFR_RNDN);
    cdiv(q, num, den, t, t2);
    mpfr_mul_si(q.re.get(), q.re.get(), term.e, MPFR_RNDN);
    mpfr_mul_si(q.im.get(), q.im.get(), term.e, MPFR_RNDN);
    mpfr_add(logd.re.get(), logd.re.get(), q.re.get(), MPFR_RNDN);
    mpfr_add(logd.im.get(), logd.im.get(), q.im.get(), MPFR_RNDN);
  }
  BigComplex one(1.0, 0.0, prec);
  cdiv(out, one, logd, t, t2);
}

Real CriticalOrbitTarget::abs_upper(const BigComplex& c) const {
  const ComplexBall cb = ComplexBall::point(c);
  std::vector<ComplexBall> z(static_cast<std::size_t>(levels_) + 1, ComplexBall(c.precision()));
  for (std::size_t k = 1; k < z.size(); ++k) z[k] = pow(z[k - 1], static_cast<unsigned long>(d_)) + cb;
  Real out(kRadiusPrecision);
  mpfr_set_ui(out.get(), 1, MPFR_RNDU);
  for (const auto& t : terms_) {
    const ComplexBall diff = z[static_cast<std::size_t>(t.b)] - z[static_cast<std::size_t>(t.a)];
    const Real bound = t.e > 0 ? diff.abs_upper() : diff.abs_lower();
    if (t.e < 0 && bound.sign() <= 0) {
      mpfr_set_inf(out.get(), 1);
      return out;
    }
    for (int r = 0; r < std::abs(t.e); ++r) {
      if (t.e > 0) mpfr_mul(out.get(), out.get(), bound.get(), MPFR_RNDU);
      else mpfr_div(out.get(), out.get(), bound.get(), MPFR_RNDU);
    }
  }
  return out;
}

std::vector<std::complex<double>> CriticalOrbitTarget::initial_points() const {
  // Truncated inverse Boettcher map w - w^(2-d)/d (+ known quadratic terms)
  // on |w| = 1.1 at equally spaced angles.
  const long n = p_.degree();
  const double radius = 1.1, two_pi = 2.0 * std::acos(-1.0);
  std::vector<cd> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    const cd w = std::polar(radius, two_pi * static_cast<double>(k) / static_cast<double>(n) + kAngleOffset);
    cd c = w - std::pow(w, 2 - d_) / static_cast<double>(d_);
    if (d_ == 2) c += 1.0 / (8.0 * w) - 1.0 / (4.0 * w * w) + 15.0 / (128.0 * w * w * w);
    pts.push_back(c);
  }
  return pts;
}

std::vector<OrbitTerm> orbit_terms(const FactorDescriptor& f) {
  std::map<std::pair<int, int>, int> ex;
  switch (f.kind) {
    case FactorKind::Gleason:
      ex[{0, f.n}] = 1;
      break;
    case FactorKind::ExactPeriod:
      for (int k = 1; k <= f.n; ++k)
        if (f.n % k == 0) ex[{0, k}] += moebius(f.n / k);
      break;
    case FactorKind::Misiurewicz:
    case FactorKind::MisiurewiczExact: {
      if (f.m < 2) return {};
      const int q = f.n - f.m;
      for (int k = 1; k <= q; ++k) {
        if (q % k != 0) continue;
        const int mu = f.kind == FactorKind::Misiurewicz ? (k == q ? 1 : 0) : moebius(q / k);
        if (mu == 0) continue;
        ex[{f.m, f.m + k}] += mu;
        ex[{f.m - 1, f.m - 1 + k}] -= mu;
        ex[{0, std::gcd(f.m - 1, k)}] -= mu * (f.d - 1);
      }
      break;
    }
  }
  std::vector<OrbitTerm> out;
  for (const auto& [ab, e] : ex)
    if (e != 0) out.push_back({ab.first, ab.second, e});
  return out;
}

std::unique_ptr<RootTarget> make_target(const FactorDescriptor& factor) {
  std::vector<OrbitTerm> terms = orbit_terms(factor);
  if (terms.empty()) return std::make_unique<HornerTarget>(factor.poly);
  return std::make_unique<CriticalOrbitTarget>(factor.d, std::move(terms), factor.poly);
}

RootSet all_roots(const IntPolynomial& p, const RootOptions& options) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "root finding needs degree >= 1");
  if (!is_squarefree(p)) throw Error(ErrorKind::NonSquarefreeInput, "gcd(p, p') is nontrivial");
  return all_roots(HornerTarget(p), options);
}

RootSet all_roots(const RootTarget& target, const RootOptions& options) {
  const IntPolynomial& p = target.polynomial();
  const long n = p.degree();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "root finding needs degree >= 1");
  const long bits = options.precision_bits;
  RootSet result;
  result.precision_bits = bits;

  if (n == 1) {
    // Single rational root -a0/a1; ball covers the conversion rounding.
    Rational r(-p.coeff(0), p.coeff(1));
    r.canonicalize();
    result.roots = {ComplexBall::from_rational(r, bits)};
    result.working_bits = bits;
    return result;
  }

  std::vector<cd> seeds = target.initial_points();
  aberth_double(target, seeds, options.max_double_sweeps);

  std::vector<BigComplex> z;
  z.reserve(seeds.size());
  for (const cd& s : seeds) z.emplace_back(s.real(), s.imag(), bits);

  for (long prec = bits; prec <= std::max(bits, options.max_precision_bits); prec *= 2) {
    for (auto& zi : z) zi.set_precision(prec);
    aberth_mp(target, z, prec, options.max_mp_sweeps);
    std::vector<ComplexBall> balls;
    if (certify(target, symmetrized(z), bits, balls) || certify(target, z, bits, balls)) {
      std::sort(balls.begin(), balls.end(), root_order);
      result.roots = std::move(balls);
      result.working_bits = prec;
      return result;
    }
  }
  throw Error(ErrorKind::PrecisionExhausted,
              "could not certify " + std::to_string(n) + " roots at " +
                  std::to_string(options.max_precision_bits) + " bits");
}

PCFParameterSet pcf_parameters(const FactorDescriptor& factor, const RootOptions& options) {
  PCFParameterSet set{factor, options.precision_bits, {}};
  if (factor.poly.degree() < 1) return set;
  auto target = make_target(factor);
  set.roots = all_roots(*target, options).roots;
  return set;
}

Real min_pairwise_distance(const std::vector<ComplexBall>& roots) {
  if (roots.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two roots");
  Real best(kRadiusPrecision);
  mpfr_set_inf(best.get(), 1);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      Real d = distance_lower(roots[i], roots[j]);
      if (d < best) best = d;
    }
  return best;
}

ClosestRoot closest_root_to(const std::vector<ComplexBall>& roots, const ComplexBall& alpha) {
  if (roots.empty()) throw Error(ErrorKind::InvalidArgument, "empty root list");
  ClosestRoot best;
  Real best_center(kRadiusPrecision);
  mpfr_set_inf(best_center.get(), 1);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Real d = point_distance_lower(roots[i].center(), alpha.center());
    if (d < best_center) {
      best_center = d;
      best.index = i;
    }
  }
  best.lower = distance_lower(roots[best.index], alpha);
  if (best.lower.sign() < 0) mpfr_set_zero(best.lower.get(), 1);
  best.upper = distance_upper(roots[best.index], alpha);
  return best;
}

}  // namespace pcf
