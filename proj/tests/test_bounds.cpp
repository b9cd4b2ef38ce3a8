#include <doctest.h>

#include <cmath>
#include <random>

#include "pcf/bounds.hpp"
#include "pcf/critical_orbit.hpp"
#include "pcf/rootfinder.hpp"

namespace {
const double kE = std::exp(1.0);

// The linear-forms bound written out directly in double.
double beg_direct(long D, double Nv, const std::vector<double>& h, const std::vector<long>& b) {
  const long n = static_cast<long>(h.size());
  const double c1 = 12.0 * D * std::pow(16 * kE * D, 3.0 * n + 2) * std::pow(std::max(1.0, std::log(D)), 2);
  const double floor = 2.0 / (D * std::pow(std::log(3.0 * D), 3));
  double theta = 1, B = 3;
  for (long i = 0; i < n; ++i) {
    theta *= std::max(h[static_cast<std::size_t>(i)], floor);
    B = std::max(B, std::fabs(static_cast<double>(b[static_cast<std::size_t>(i)])));
  }
  return -c1 * Nv / std::log(Nv) * theta * std::log(B);
}
}  // namespace

TEST_CASE("linear forms constant") {
  CHECK(pcf::linear_forms_constant(2, 1).to_double() == doctest::Approx(12 * std::pow(16 * kE, 8)));
  CHECK(pcf::linear_forms_constant(2, 1).to_double() == doctest::Approx(1.53e14).epsilon(1e-2));
  const double l3 = std::log(3.0);
  CHECK(pcf::linear_forms_constant(1, 3).to_double() == doctest::Approx(36 * std::pow(48 * kE, 5) * l3 * l3));
}

TEST_CASE("linear forms lower bound") {
  pcf::LinearFormInput in;
  in.heights = {std::log(2.0), std::log(3.0)};
  in.exponents = {1, -1};
  const double v = pcf::beg_lower_bound(in).to_double();
  CHECK(v == doctest::Approx(beg_direct(1, 2, in.heights, in.exponents)));
  // Both heights sit below the floor 2 / log(3)^3.
  const double floor = 2 / std::pow(std::log(3.0), 3);
  CHECK(v == doctest::Approx(-pcf::linear_forms_constant(2, 1).to_double() * 2 / std::log(2.0) * floor * floor *
                             std::log(3.0)));
  CHECK(v < 0);
}

TEST_CASE("linear forms bound is monotone") {
  pcf::LinearFormInput in;
  in.heights = {3.0, 4.0};
  in.exponents = {5, -2};
  const double base = pcf::beg_lower_bound(in).to_double();
  in.heights[0] = 3.5;
  CHECK(pcf::beg_lower_bound(in).to_double() <= base);
  in.heights[0] = 3.0;
  in.exponents[0] = 50;
  CHECK(pcf::beg_lower_bound(in).to_double() <= base);
}

TEST_CASE("linear forms bound holds on random rational pairs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> dist(1, 50);
  for (int i = 0; i < 50; ++i) {
    const long a = dist(rng), b = dist(rng), c = dist(rng), e = dist(rng);
    const double x = static_cast<double>(a) / b, y = static_cast<double>(c) / e;
    if (std::fabs(x / y - 1) < 1e-12) continue;
    pcf::LinearFormInput in;
    in.heights = {std::log(std::max(a, b)), std::log(std::max(c, e))};
    in.exponents = {1, -1};
    CHECK(std::log(std::fabs(x / y - 1)) > pcf::beg_lower_bound(in).to_double());
  }
}

TEST_CASE("separation bound") {
  CHECK(pcf::mahler_separation_bound(3, 2.0).value().to_double() ==
        doctest::Approx(std::sqrt(3.0) * std::pow(4.0, -3.5) / 4));
  CHECK(pcf::mahler_separation_bound(2, 1.0).value().to_double() == doctest::Approx(std::sqrt(3.0) * std::pow(3.0, -2.5)));
  CHECK(pcf::mahler_separation_bound(3, 2.0).weak_value() <= pcf::mahler_separation_bound(3, 2.0).value());
  const auto roots = pcf::all_roots(pcf::IntPolynomial{1, 1, 2, 1}).roots;
  CHECK(pcf::min_pairwise_distance(roots) >= pcf::mahler_separation_bound(3, 2.0).value());
}

TEST_CASE("separation bound holds on critical-orbit factors") {
  pcf::RootOptions opts;
  opts.precision_bits = 128;
  for (int n = 2; n <= 6; ++n) {
    const auto f = pcf::exact_period_factor(2, n);
    if (f.poly.degree() < 2) continue;
    const auto roots = pcf::pcf_parameters(f, opts).roots;
    const auto bound = pcf::mahler_separation_bound(f.poly.degree(), pcf::log_of(f.poly.height(), 128));
    CHECK(pcf::min_pairwise_distance(roots) >= bound.value());
  }
}

TEST_CASE("orbit-size bound") {
  CHECK(pcf::prop31_bound(0, 2, 1, 0.1, 1).to_double() == doctest::Approx(2));
  CHECK(pcf::prop31_bound(std::log(2.0), 2, 3, 1, 1).to_double() == doctest::Approx((std::log(2.0) + 2) * 19683));
}

TEST_CASE("degree and modulus checks") {
  auto r = pcf::degree_lower_bound_check(3, 4, 2);
  CHECK(r.bound_value.to_double() == doctest::Approx(13.5));
  CHECK(*r.satisfied);
  r = pcf::degree_lower_bound_check(2, 1, 1);
  CHECK(r.bound_value.to_double() == doctest::Approx(1));
  CHECK(pcf::pcf_modulus_bound(2).to_double() == 2);
  CHECK(pcf::pcf_modulus_bound(3).to_double() == doctest::Approx(std::sqrt(2.0)));

  pcf::RootOptions opts;
  opts.precision_bits = 128;
  const auto g = pcf::gleason(2, 6);
  const auto roots = pcf::pcf_parameters({pcf::FactorKind::Gleason, 2, 0, 6, g.poly, g.poly.degree()}, opts).roots;
  r = pcf::pcf_modulus_check(2, roots);
  CHECK(*r.satisfied);
}

TEST_CASE("census threshold") {
  CHECK(pcf::thm15_threshold(1, 1, 1).to_double() == 1);
  CHECK(pcf::thm15_threshold(1, 2, 1).to_double() == 8);
  CHECK(pcf::thm15_threshold(1, 2, 2).to_double() == 2048);
}
