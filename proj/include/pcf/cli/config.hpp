#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "pcf/heights.hpp"

namespace pcf::cli {

enum class OutputFormat { Tsv, StructuredText };
enum class ImageFormat { Svg, Ppm };

struct RunConfig {
  int d = 2;
  int max_n = 5;
  long bits = 256;
  /// "a/b" or "a" for a rational; "c_k,...,c_0#i" for root i (in root order)
  /// of the integer polynomial with those coefficients, highest degree first.
  std::string alpha = "1";
  std::vector<mpz_class> S;
  double tau = 0.5;
  double C = 1.0;
  bool plot = false;
  std::string cache_dir = "cache";
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::Tsv;
  ImageFormat image = ImageFormat::Svg;
  int size = 800;
  /// Highest level whose parameters are overlaid on the plot.
  int overlay_n = 6;
};

inline constexpr int kConfigVersion = 1;

/// Flat `key = value` text with a mandatory `version` key; lines starting
/// with `#` are comments. Unknown keys are rejected.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Applies one key/value pair; shared by the file parser and the flags.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Range checks before any command runs; throws InvalidArgument.
void validate(const RunConfig& config);

std::vector<mpz_class> parse_prime_list(const std::string& text);
AlgebraicNumber parse_alpha(const std::string& spec, long bits);

}  // namespace pcf::cli
