#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcf/ball.hpp"
#include "pcf/real.hpp"

namespace pcf {

/// Data of a linear form Lambda = a_1^b_1 ... a_n^b_n - 1 at one place.
struct LinearFormInput {
  std::vector<double> heights;  ///< h(a_i) >= 0
  std::vector<long> exponents;  ///< b_i, not all zero
  long field_degree = 1;        ///< [K:Q]
  double place_norm = 2;        ///< N(v): 2 at infinite places, the residue norm otherwise
};

struct BoundReport {
  std::string name;
  std::string inputs;
  Real bound_value;
  std::optional<Real> empirical_value;
  std::optional<bool> satisfied;
};

/// c_1(n, d) = 12 d (16 e d)^(3n + 2) max(1, log d)^2.
Real linear_forms_constant(long n, long d, mpfr_prec_t prec = 128);

/// Lower bound for log|Lambda|_v: -c_1(n, D) N(v)/log N(v) Theta log B with
/// Theta = prod max(h_i, 2 / (D log(3D)^3)) and B = max(3, |b_i|).
Real beg_lower_bound(const LinearFormInput& input, mpfr_prec_t prec = 128);

/// Root separation for a squarefree integer polynomial of degree dc and
/// height H: sqrt(3) (dc + 1)^(-(2 dc + 1)/2) H^(1 - dc), together with the
/// weaker (2 dc)^(-dc) H^(1 - dc). Evaluated in log space, so huge H is fine.
struct SeparationBound {
  Real log_value;       ///< log of the main bound
  Real log_weak_value;  ///< log of the weaker form
  Real value() const;
  Real weak_value() const;
};
SeparationBound mahler_separation_bound(long dc, const Real& log_height, mpfr_prec_t prec = 128);
SeparationBound mahler_separation_bound(long dc, double height);

/// C6 (h(alpha) + d/(d-1)) |G|^(8 + eps).
Real prop31_bound(double h_alpha, int d, long orbit_size, double eps, double C6, mpfr_prec_t prec = 128);

/// Checks deg g_n = d^(n-1) >= d^(n-1) / base_degree and, over Q, the exact
/// period factor degree against the Moebius count.
BoundReport degree_lower_bound_check(int d, int n, long base_degree);

/// 2^(1/(d-1)): every PCF parameter of z^d + c satisfies |c| <= this.
Real pcf_modulus_bound(int d, mpfr_prec_t prec = 128);
/// Batch check of the modulus bound on root balls (largest |c| upper bound
/// as the empirical value, tolerance added to the bound).
BoundReport pcf_modulus_check(int d, const std::vector<ComplexBall>& roots, double tolerance = 1e-12);

/// C1 |S|^3 D^8.
Real thm15_threshold(double C1, long s_size, long field_degree, mpfr_prec_t prec = 128);

}  // namespace pcf
