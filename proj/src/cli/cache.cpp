#include "pcf/cli/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include "pcf/errors.hpp"
#include "pcf/rootfinder.hpp"

namespace pcf::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::CacheError, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void atomic_write(const fs::path& path, const std::string& content) {
  if (auto existing = read_file(path); existing && *existing == content) return;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::CacheError, "cannot create " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::CacheError, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::CacheError, "short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::CacheError, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string serialize_roots(const IntPolynomial& poly, long bits, const std::vector<ComplexBall>& roots) {
  std::string out;
  out += "poly_sha256=" + sha256_hex(serialize(poly)) + "\n";
  out += "precision=" + std::to_string(bits) + "\n";
  out += "count=" + std::to_string(roots.size()) + "\n";
  for (const auto& r : roots) {
    out += r.center().re.to_hex();
    out += ' ';
    out += r.center().im.to_hex();
    out += ' ';
    out += r.radius().to_hex();
    out += '\n';
  }
  return out;
}

std::optional<std::vector<ComplexBall>> parse_roots(const std::string& text, const IntPolynomial& poly, long bits) {
  std::istringstream in(text);
  std::string line;
  auto header = [&](const std::string& key) -> std::optional<std::string> {
    if (!std::getline(in, line) || line.rfind(key + "=", 0) != 0) return std::nullopt;
    return line.substr(key.size() + 1);
  };
  const auto hash = header("poly_sha256");
  const auto prec = header("precision");
  const auto count = header("count");
  if (!hash || !prec || !count) return std::nullopt;
  if (*hash != sha256_hex(serialize(poly)) || *prec != std::to_string(bits)) return std::nullopt;
  std::vector<ComplexBall> roots;
  try {
    const long n = std::stol(*count);
    for (long i = 0; i < n; ++i) {
      if (!std::getline(in, line)) return std::nullopt;
      std::istringstream fields(line);
      std::string re, im, rad;
      if (!(fields >> re >> im >> rad)) return std::nullopt;
      // Hex floats carry their own precision; leave room for all digits.
      const mpfr_prec_t wp = static_cast<mpfr_prec_t>(4 * std::max(re.size(), im.size()) + 64);
      BigComplex c(Real::from_hex(re, wp), Real::from_hex(im, wp));
      roots.emplace_back(std::move(c), Real::from_hex(rad, kRadiusPrecision));
    }
    if (static_cast<long>(roots.size()) != poly.degree()) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return roots;
}

fs::path Cache::gleason_path(int d, int n) const {
  return dir_ / "gleason" / ("d" + std::to_string(d)) / ("n" + std::to_string(n) + ".poly");
}

fs::path Cache::factor_path(const FactorDescriptor& f) const {
  std::string name;
  if (f.kind == FactorKind::ExactPeriod || f.kind == FactorKind::Gleason) {
    name = "period-n" + std::to_string(f.n) + ".poly";
  } else {
    name = "preperiod-m" + std::to_string(f.m) + "-q" + std::to_string(f.n - f.m) + ".poly";
  }
  return dir_ / "factors" / ("d" + std::to_string(f.d)) / name;
}

fs::path Cache::roots_path(int d, int n, long bits) const {
  return dir_ / "roots" / ("d" + std::to_string(d)) /
         ("n" + std::to_string(n) + ".p" + std::to_string(bits) + ".roots");
}

IntPolynomial Cache::gleason(int d, int n) {
  const IntPolynomial g = pcf::gleason(d, n).poly;
  atomic_write(gleason_path(d, n), serialize(g));
  return g;
}

void Cache::store_factor(const FactorDescriptor& f) { atomic_write(factor_path(f), serialize(f.poly)); }

std::vector<ComplexBall> Cache::gleason_roots(int d, int n, long bits) {
  const IntPolynomial g = gleason(d, n);
  const fs::path path = roots_path(d, n, bits);
  if (auto text = read_file(path)) {
    if (auto roots = parse_roots(*text, g, bits)) return *roots;
  }
  RootOptions opts;
  opts.precision_bits = bits;
  const FactorDescriptor f{FactorKind::Gleason, d, 0, n, g, g.degree()};
  const std::string text = serialize_roots(g, bits, pcf_parameters(f, opts).roots);
  atomic_write(path, text);
  // Hand back the parsed form so fresh and cached runs see identical balls.
  return *parse_roots(text, g, bits);
}

}  // namespace pcf::cli
