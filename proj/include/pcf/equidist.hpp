#pragma once

#include <string>
#include <vector>

#include "pcf/ball.hpp"
#include "pcf/heights.hpp"
#include "pcf/integrality.hpp"
#include "pcf/polynomials.hpp"

namespace pcf {

enum class KernelKind { PlainLog, Truncated };

struct KernelSpec {
  KernelKind kind = KernelKind::PlainLog;
  double tau = 0.5;  ///< truncation level, 0 < tau < 1
};

struct KernelAverage {
  Real value;
  Real error_bound;
};

/// (1 / d^(n-1)) log|g_n(alpha)|, which equals the average of log|x - alpha|
/// over the roots x of the monic g_n. Exact evaluation of g_n(alpha), one
/// rounding for the logarithm. Throws KernelSingular when g_n(alpha) = 0.
Real avg_log_distance_vieta(int d, int n, const Rational& alpha, mpfr_prec_t prec = 256);

/// Ball-arithmetic mean of the kernel over the roots. The plain kernel throws
/// KernelSingular when alpha's ball meets a root ball.
KernelAverage avg_log_distance_roots(const std::vector<ComplexBall>& roots, const ComplexBall& alpha,
                                     const KernelSpec& kernel, mpfr_prec_t prec = 256);

/// log+|x| + log+|alpha| - log max(tau, |x - alpha|) at the ball centers.
Real truncated_kernel(const ComplexBall& x, const ComplexBall& alpha, double tau);

struct DiscrepancyReport {
  int d = 2;
  int n = 1;
  long N = 1;  ///< d^(n-1) = deg g_n
  std::string alpha_label;
  Real empirical_avg;
  Real green_value;
  Real discrepancy;
  Real rhs_bound;  ///< C (log N / N)^(1/2) (log+|alpha| + 1/tau)
  Real fitted_C;   ///< smallest C for which discrepancy <= rhs_bound
  double tau = 0.5;
  double C = 1.0;
  bool numeric_path = false;  ///< roots summed numerically (alpha not rational)
  bool pass = false;
};

/// Empirical mean of log|x - alpha| over the level-n parameters against the
/// escape rate of alpha. Rational alpha uses the exact Vieta path. Throws
/// HypothesisViolated when alpha is post-critically finite.
DiscrepancyReport discrepancy_report(int d, int n, const AlgebraicNumber& alpha, double tau, double C,
                                     mpfr_prec_t prec = 256);

struct PairingCheck {
  Real pairing;  ///< escape rates of the embeddings plus log+|alpha|_p over p in S
  Real canonical_height;
  Real difference;
  Real tolerance;
  bool consistent = false;
};

/// Sum over the places of S of the closed-form integrals of log|x - alpha|_v
/// against the bifurcation measure, compared with the critical canonical
/// height. They agree when S covers every prime where alpha is not integral.
PairingCheck pairing_crosscheck(int d, const AlgebraicNumber& alpha, const PrimeSet& S, long bits = 256);

}  // namespace pcf
