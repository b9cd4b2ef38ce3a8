#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pcf/ball.hpp"
#include "pcf/critical_orbit.hpp"

namespace pcf::cli {

std::string sha256_hex(const std::string& data);

/// Writes through a temporary file in the same directory and renames it into
/// place, creating parent directories. Leaves an identical file untouched.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::optional<std::string> read_file(const std::filesystem::path& path);

/// Text form of a certified root list. The header binds it to the defining
/// polynomial (SHA-256 of its serialized form) and the certification
/// precision; centers and radii are exact hexadecimal floats.
std::string serialize_roots(const IntPolynomial& poly, long bits, const std::vector<ComplexBall>& roots);
/// nullopt when the header does not match `poly` and `bits`.
std::optional<std::vector<ComplexBall>> parse_roots(const std::string& text, const IntPolynomial& poly, long bits);

/// On-disk cache for critical-orbit data rooted at `dir`:
///   gleason/d<k>/n<j>.poly
///   factors/d<k>/period-n<j>.poly, factors/d<k>/preperiod-m<i>-q<j>.poly
///   roots/d<k>/n<j>.p<bits>.roots
class Cache {
 public:
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path gleason_path(int d, int n) const;
  std::filesystem::path factor_path(const FactorDescriptor& f) const;
  std::filesystem::path roots_path(int d, int n, long bits) const;

  /// g_n, read from the cache when present and well formed, written otherwise.
  IntPolynomial gleason(int d, int n);
  void store_factor(const FactorDescriptor& f);
  /// Certified roots of g_n at `bits`, recomputed when the cached header does
  /// not match the polynomial hash or precision.
  std::vector<ComplexBall> gleason_roots(int d, int n, long bits);

 private:
  std::filesystem::path dir_;
};

}  // namespace pcf::cli
