#include "pcf/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pcf/errors.hpp"
#include "pcf/integrality.hpp"

namespace pcf::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::InvalidArgument, "bad value '" + value + "' for " + key);
}

long to_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) bad(key, value);
    return v;
  } catch (const std::logic_error&) {
    bad(key, value);
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) bad(key, value);
    return v;
  } catch (const std::logic_error&) {
    bad(key, value);
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  bad(key, value);
}

}  // namespace

std::vector<mpz_class> parse_prime_list(const std::string& text) {
  std::vector<mpz_class> out;
  if (trim(text).empty() || trim(text) == "-") return out;
  for (const auto& item : split(text, ',')) {
    mpz_class p;
    if (item.empty() || p.set_str(item, 10) != 0) bad("S", text);
    out.push_back(p);
  }
  PrimeSet check(out);  // validates primality and uniqueness
  return check.primes();
}

AlgebraicNumber parse_alpha(const std::string& spec, long bits) {
  const std::string s = trim(spec);
  if (s.find(',') == std::string::npos && s.find('#') == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) bad("alpha", spec);
    q.canonicalize();
    return AlgebraicNumber::from_rational(q, bits);
  }
  std::string coeffs = s;
  std::size_t index = 0;
  if (auto hash = s.find('#'); hash != std::string::npos) {
    coeffs = s.substr(0, hash);
    const long i = to_long("alpha root index", trim(s.substr(hash + 1)));
    if (i < 0) bad("alpha", spec);
    index = static_cast<std::size_t>(i);
  }
  std::vector<mpz_class> c;
  for (const auto& item : split(coeffs, ',')) {
    mpz_class v;
    if (item.empty() || v.set_str(item, 10) != 0) bad("alpha", spec);
    c.push_back(v);
  }
  std::reverse(c.begin(), c.end());
  IntPolynomial p(std::move(c));
  if (p.degree() < 1) bad("alpha", spec);
  if (!is_squarefree(p)) throw Error(ErrorKind::InvalidArgument, "alpha polynomial must be squarefree");
  return AlgebraicNumber::from_min_poly(p, index, bits);
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "d") {
    config.d = static_cast<int>(to_long(key, value));
  } else if (key == "max_n" || key == "max-n") {
    config.max_n = static_cast<int>(to_long(key, value));
  } else if (key == "bits") {
    config.bits = to_long(key, value);
  } else if (key == "alpha") {
    config.alpha = value;
  } else if (key == "S") {
    config.S = parse_prime_list(value);
  } else if (key == "tau") {
    config.tau = to_double(key, value);
  } else if (key == "C") {
    config.C = to_double(key, value);
  } else if (key == "plot") {
    config.plot = to_bool(key, value);
  } else if (key == "cache") {
    config.cache_dir = value;
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "format") {
    if (value == "tsv") config.format = OutputFormat::Tsv;
    else if (value == "structured-text") config.format = OutputFormat::StructuredText;
    else bad(key, value);
  } else if (key == "image") {
    if (value == "svg") config.image = ImageFormat::Svg;
    else if (value == "ppm") config.image = ImageFormat::Ppm;
    else bad(key, value);
  } else if (key == "size") {
    config.size = static_cast<int>(to_long(key, value));
  } else if (key == "overlay_n") {
    config.overlay_n = static_cast<int>(to_long(key, value));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown setting '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  bool versioned = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "version") {
      if (to_long(key, value) != kConfigVersion)
        throw Error(ErrorKind::InvalidArgument, "unsupported config version " + value);
      versioned = true;
      continue;
    }
    apply_setting(base, key, value);
  }
  if (!versioned) throw Error(ErrorKind::InvalidArgument, "config file lacks a version key");
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::CacheError, "cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

void validate(const RunConfig& c) {
  if (c.d < 2 || c.d > 64) throw Error(ErrorKind::InvalidArgument, "--d must lie in [2, 64]");
  if (c.max_n < 1) throw Error(ErrorKind::InvalidArgument, "--max-n must be >= 1");
  if (c.bits < 64 || c.bits > 4096) throw Error(ErrorKind::InvalidArgument, "--bits must lie in [64, 4096]");
  if (!(c.tau > 0 && c.tau < 1)) throw Error(ErrorKind::InvalidArgument, "--tau must lie in (0, 1)");
  if (!(c.C > 0)) throw Error(ErrorKind::InvalidArgument, "--C must be positive");
  if (c.size < 16 || c.size > 8192) throw Error(ErrorKind::InvalidArgument, "size must lie in [16, 8192]");
  if (c.overlay_n < 0) throw Error(ErrorKind::InvalidArgument, "overlay_n must be >= 0");
}

}  // namespace pcf::cli
