#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "pcf/polynomials.hpp"

namespace pcf {

/// Knobs shared by every generator in this module.
struct OrbitConfig {
  /// Largest admissible d^(n-1).
  long degree_cap = 4096;
};

/// g_n(c) = f_{d,c}^n(0): monic of degree d^(n-1) in the parameter c.
struct CriticalOrbitPolynomial {
  int d = 2;
  int n = 1;
  IntPolynomial poly;
};

enum class FactorKind {
  Gleason,           ///< all of g_n: period dividing n
  ExactPeriod,       ///< critical point periodic of exact period n
  Misiurewicz,       ///< exact preperiod m, period dividing n - m
  MisiurewiczExact,  ///< exact preperiod m, exact period n - m
};

struct FactorDescriptor {
  FactorKind kind = FactorKind::Gleason;
  int d = 2;
  int m = 0;  ///< preperiod; 0 for periodic kinds
  int n = 1;  ///< level: g_n = g_m on the roots
  IntPolynomial poly;
  long expected_degree = 0;

  std::string label() const;
};

/// Möbius function.
int moebius(long n);
/// d^k as a long, or -1 on overflow past `cap`.
long checked_power(long d, long k, long cap);

/// g_n for the family z^d + c. Memoized per d; safe to call concurrently.
CriticalOrbitPolynomial gleason(int d, int n, const OrbitConfig& config = {});

/// g_n - g_m with g_0 = 0.
IntPolynomial preperiodic_poly(int d, int m, int n, const OrbitConfig& config = {});

/// G_n = g_n / prod_{k | n, k < n} G_k, checked against the Möbius degree.
FactorDescriptor exact_period_factor(int d, int n, const OrbitConfig& config = {});

/// Parameters whose critical point has exact preperiod m >= 1 and period
/// dividing n - m: P_{m,n} / (P_{m-1,n-1} g_k^(d-1)) with k = gcd(m-1, n-1).
/// Both divisions are exact for the unicritical family; the result is checked
/// squarefree and against the expected degree. Empty (constant 1) for m = 1.
FactorDescriptor misiurewicz_factor(int d, int m, int n, const OrbitConfig& config = {});

/// Exact preperiod m >= 2 and exact period q >= 1, obtained from
/// misiurewicz_factor(d, m, m + q) by dividing out the lower periods.
FactorDescriptor misiurewicz_exact_factor(int d, int m, int q, const OrbitConfig& config = {});

/// Number of parameters with exact preperiod m and period dividing n - m.
long misiurewicz_count(int d, int m, int n);

/// Exact critical-orbit cycle detection for an algebraic integer c given by
/// its monic minimal polynomial: iterates z -> z^d + c from z_0 = 0 in
/// Z[t]/(min_poly) and returns the first (m, n), m < n, with z_m = z_n.
/// Returns nullopt when the polynomial is not monic (c is then not an
/// algebraic integer and never PCF) or no repetition is seen within
/// `max_steps` steps or before coefficients exceed `max_bits`.
std::optional<std::pair<int, int>> find_critical_cycle(int d, const IntPolynomial& min_poly,
                                                       int max_steps = 64,
                                                       std::size_t max_bits = 4096);

}  // namespace pcf
