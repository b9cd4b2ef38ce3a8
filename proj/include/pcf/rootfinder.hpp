#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "pcf/ball.hpp"
#include "pcf/critical_orbit.hpp"
#include "pcf/polynomials.hpp"

namespace pcf {

struct RootOptions {
  /// Certification target: every radius <= 2^(-bits/2) (1 + |center|).
  long precision_bits = 256;
  /// Working precision doubles from precision_bits up to this cap.
  long max_precision_bits = 4096;
  int max_double_sweeps = 600;
  int max_mp_sweeps = 200;
};

/// Certified roots of a squarefree polynomial, sorted by (re, im, radius).
struct RootSet {
  long precision_bits = 0;
  /// Working precision at which certification succeeded.
  long working_bits = 0;
  std::vector<ComplexBall> roots;
};

/// Roots of a critical-orbit factor: the numeric image of its PCF parameters.
struct PCFParameterSet {
  FactorDescriptor source;
  long precision_bits = 0;
  std::vector<ComplexBall> roots;
};

/// What the simultaneous iteration needs from a polynomial: the Newton
/// correction p/p' in double and multiprecision, and a rigorous bound on |p|.
class RootTarget {
 public:
  virtual ~RootTarget() = default;
  virtual const IntPolynomial& polynomial() const = 0;
  long degree() const { return polynomial().degree(); }
  /// p(z)/p'(z) in double; non-finite on failure.
  virtual std::complex<double> newton_double(std::complex<double> z) const = 0;
  /// p(z)/p'(z) at the precision of `out`.
  virtual void newton_mp(const BigComplex& z, BigComplex& out) const = 0;
  /// Rigorous upper bound on |p(z)| for the exact point z.
  virtual Real abs_upper(const BigComplex& z) const = 0;
  /// Starting points for the iteration; defaults to circles read off the
  /// Newton polygon of the coefficients.
  virtual std::vector<std::complex<double>> initial_points() const;
};

/// Generic target: Horner evaluation of the coefficients.
class HornerTarget final : public RootTarget {
 public:
  explicit HornerTarget(IntPolynomial p);
  const IntPolynomial& polynomial() const override { return p_; }
  std::complex<double> newton_double(std::complex<double> z) const override;
  void newton_mp(const BigComplex& z, BigComplex& out) const override;
  Real abs_upper(const BigComplex& z) const override;

 private:
  IntPolynomial p_;
  IntPolynomial dp_;
  std::vector<double> scaled_;  // coefficients * 2^-shift, for the double phase
};

/// One factor (z_b - z_a)^e of an orbit product, with z_0 = 0 and z_k the
/// k-th iterate of the critical point; a = 0 gives g_b itself.
struct OrbitTerm {
  int a = 0;
  int b = 1;
  int e = 1;
};

/// Polynomial that equals a product of orbit terms, evaluated through the
/// recursion z <- z^d + c instead of its (huge) coefficients.
class CriticalOrbitTarget final : public RootTarget {
 public:
  CriticalOrbitTarget(int d, std::vector<OrbitTerm> terms, IntPolynomial poly);
  const IntPolynomial& polynomial() const override { return p_; }
  std::complex<double> newton_double(std::complex<double> z) const override;
  void newton_mp(const BigComplex& z, BigComplex& out) const override;
  Real abs_upper(const BigComplex& z) const override;
  /// Points on an approximate equipotential of the connectedness locus.
  std::vector<std::complex<double>> initial_points() const override;

 private:
  int d_;
  std::vector<OrbitTerm> terms_;
  int levels_;
  IntPolynomial p_;
};

/// Orbit-term form of a factor, or empty when it has none (m = 1
/// preperiodic factors): Moebius products of g_k for the periodic kinds, and
/// (g_(m+k) - g_m) / ((g_(m-1+k) - g_(m-1)) g_gcd(m-1,k)^(d-1)) combined over
/// k | q for the preperiodic ones.
std::vector<OrbitTerm> orbit_terms(const FactorDescriptor& factor);

/// Target best suited to a factor: orbit recursion for periodic kinds,
/// Horner otherwise.
std::unique_ptr<RootTarget> make_target(const FactorDescriptor& factor);

/// All complex roots of a squarefree polynomial with disjoint certified
/// inclusion balls. Throws NonSquarefreeInput or PrecisionExhausted.
RootSet all_roots(const IntPolynomial& p, const RootOptions& options = {});
RootSet all_roots(const RootTarget& target, const RootOptions& options = {});

PCFParameterSet pcf_parameters(const FactorDescriptor& factor, const RootOptions& options = {});

/// Lower bound on min |x_i - x_j| (center distance minus radii).
Real min_pairwise_distance(const std::vector<ComplexBall>& roots);

struct ClosestRoot {
  std::size_t index = 0;
  Real lower;
  Real upper;
};

/// Root closest to alpha (by center distance), with two-sided bounds on the
/// true distance.
ClosestRoot closest_root_to(const std::vector<ComplexBall>& roots, const ComplexBall& alpha);

/// Lexicographic (re, im, radius) order used for every root list.
bool root_order(const ComplexBall& a, const ComplexBall& b);

}  // namespace pcf
