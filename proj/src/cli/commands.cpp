#include "pcf/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "pcf/bounds.hpp"
#include "pcf/cli/cache.hpp"
#include "pcf/cli/render.hpp"
#include "pcf/critical_orbit.hpp"
#include "pcf/equidist.hpp"
#include "pcf/integrality.hpp"
#include "pcf/rootfinder.hpp"

namespace pcf::cli {
namespace {

namespace fs = std::filesystem;

std::string num(const Real& x, int digits = 12) {
  if (!x.is_finite()) return x.sign() > 0 ? "inf" : (x.sign() < 0 ? "-inf" : "nan");
  return x.to_string(digits);
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void check_level_cap(int d, int max_n) {
  if (checked_power(d, max_n - 1, OrbitConfig{}.degree_cap) < 0) {
    throw Error(ErrorKind::DegreeCapExceeded, "d^(max_n - 1) = " + std::to_string(d) + "^" +
                                                  std::to_string(max_n - 1) + " exceeds the degree cap " +
                                                  std::to_string(OrbitConfig{}.degree_cap));
  }
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return kExitUsage;
    case ErrorKind::DegreeCapExceeded: return kExitDegreeCap;
    case ErrorKind::HypothesisViolated: return kExitHypothesis;
    case ErrorKind::PrecisionExhausted: return kExitPrecision;
    case ErrorKind::KernelSingular: return kExitKernelSingular;
    case ErrorKind::FactorizationStructureViolated: return kExitStructure;
    case ErrorKind::NotDivisible: return kExitNotDivisible;
    case ErrorKind::CacheError: return kExitIo;
    default: return kExitOther;
  }
}

std::string Table::render(OutputFormat format) const {
  std::string out;
  if (format == OutputFormat::Tsv) {
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "\t" : "") + header[i];
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + row[i];
      out += '\n';
    }
    return out;
  }
  for (const auto& row : rows) {
    out += "[row]\n";
    for (std::size_t i = 0; i < row.size() && i < header.size(); ++i) out += header[i] + " = " + row[i] + "\n";
    out += '\n';
  }
  return out;
}

Table cmd_enumerate(const RunConfig& config) {
  check_level_cap(config.d, config.max_n);
  Cache cache(config.cache_dir);
  Table t;
  t.header = {"level", "gleason_degree", "period_factor_degree", "preperiodic_factor_degree", "roots",
              "max_abs_root"};
  for (int n = 1; n <= config.max_n; ++n) {
    const IntPolynomial g = cache.gleason(config.d, n);
    const FactorDescriptor period = exact_period_factor(config.d, n);
    cache.store_factor(period);
    long preperiodic = 0;
    for (int m = 2; m < n; ++m) {
      const FactorDescriptor f = misiurewicz_exact_factor(config.d, m, n - m);
      cache.store_factor(f);
      preperiodic += f.poly.degree();
    }
    const auto roots = cache.gleason_roots(config.d, n, config.bits);
    Real worst(kRadiusPrecision);
    for (const auto& r : roots) worst = max(worst, r.abs_upper());
    t.rows.push_back({std::to_string(n), std::to_string(g.degree()), std::to_string(period.poly.degree()),
                      std::to_string(preperiodic), std::to_string(roots.size()), num(worst, 15)});
  }
  return t;
}

Table cmd_integral_scan(const RunConfig& config) {
  check_level_cap(config.d, config.max_n);
  const AlgebraicNumber alpha = parse_alpha(config.alpha, config.bits);
  const CensusReport rep = census(config.d, config.max_n, alpha, PrimeSet(config.S));
  Table t;
  t.header = {"kind", "preperiod", "period", "degree", "meeting_primes", "unfactored", "S_integral", "method"};
  std::istringstream tsv(census_tsv(rep));
  std::string line;
  std::getline(tsv, line);  // header
  while (std::getline(tsv, line)) {
    std::vector<std::string> row;
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, '\t')) row.push_back(f);
    t.rows.push_back(std::move(row));
  }
  std::string file = census_tsv(rep);
  file += "# alpha=" + config.alpha + " S=" + rep.S.to_string() + " S_integral_factors=" +
          std::to_string(rep.s_integral_count) + " threshold=" + num(rep.threshold) + "\n";
  atomic_write(fs::path(config.out_dir) /
                   ("census-d" + std::to_string(config.d) + "-n" + std::to_string(config.max_n) + ".tsv"),
               file);
  return t;
}

Table cmd_equidist(const RunConfig& config) {
  check_level_cap(config.d, config.max_n);
  const AlgebraicNumber alpha = parse_alpha(config.alpha, config.bits);
  Table t;
  t.header = {"d", "n", "N", "alpha", "path", "empirical", "green", "discrepancy", "rhs_bound", "fitted_C", "pass"};
  std::vector<double> xs, ys;
  for (int n = 2; n <= config.max_n; ++n) {
    const DiscrepancyReport r = discrepancy_report(config.d, n, alpha, config.tau, config.C, config.bits);
    t.rows.push_back({std::to_string(r.d), std::to_string(r.n), std::to_string(r.N), r.alpha_label,
                      r.numeric_path ? "numeric-roots" : "exact-vieta", num(r.empirical_avg), num(r.green_value),
                      num(r.discrepancy, 6), num(r.rhs_bound, 6), num(r.fitted_C, 6), r.pass ? "yes" : "no"});
    if (r.discrepancy.sign() > 0) {
      xs.push_back(n);
      ys.push_back(std::log10(r.discrepancy.to_double()));
    }
  }
  if (config.plot) {
    atomic_write(fs::path(config.out_dir) / ("equidist-d" + std::to_string(config.d) + ".svg"),
                 scatter_svg("discrepancy, d=" + std::to_string(config.d) + ", alpha=" + config.alpha, xs, ys,
                             "level n", "log10 discrepancy"));
  }
  return t;
}

Table cmd_bounds(const RunConfig& config) {
  check_level_cap(config.d, config.max_n);
  Cache cache(config.cache_dir);
  Table t;
  t.header = {"name", "inputs", "bound", "empirical", "satisfied"};
  auto add = [&t](const BoundReport& r) {
    t.rows.push_back({r.name, r.inputs, num(r.bound_value),
                      r.empirical_value ? num(*r.empirical_value) : "-",
                      r.satisfied ? (*r.satisfied ? "yes" : "no") : "-"});
  };
  for (int n = 1; n <= config.max_n; ++n) {
    add(degree_lower_bound_check(config.d, n, 1));
    const auto roots = cache.gleason_roots(config.d, n, config.bits);
    BoundReport mod = pcf_modulus_check(config.d, roots);
    mod.inputs += " n=" + std::to_string(n);
    add(mod);
    if (roots.size() >= 2) {
      const IntPolynomial g = cache.gleason(config.d, n);
      const SeparationBound sep = mahler_separation_bound(g.degree(), log_of(g.height(), 128));
      BoundReport r;
      r.name = "root_separation";
      r.inputs = "d=" + std::to_string(config.d) + " n=" + std::to_string(n) + " deg=" + std::to_string(g.degree());
      r.bound_value = sep.value();
      r.empirical_value = min_pairwise_distance(roots);
      r.satisfied = *r.empirical_value >= r.bound_value;
      add(r);
    }
  }
  {
    LinearFormInput in;
    in.heights = {std::log(2.0), std::log(3.0)};
    in.exponents = {1, -1};
    BoundReport r;
    r.name = "linear_forms";
    r.inputs = "alpha=(2,3) b=(1,-1) D=1 N(v)=2";
    r.bound_value = beg_lower_bound(in);
    r.empirical_value = log(Real(1.0 / 3.0, 128));
    r.satisfied = *r.empirical_value > r.bound_value;
    add(r);
  }
  {
    BoundReport r;
    r.name = "thm15_threshold";
    const long s_size = static_cast<long>(config.S.size()) + 1;
    r.inputs = "C1=1 |S|=" + std::to_string(s_size) + " D=1";
    r.bound_value = thm15_threshold(1.0, s_size, 1);
    add(r);
  }
  return t;
}

Table cmd_plot(const RunConfig& config) {
  const View view = default_view(config.d);
  const int max_iter = 256;
  const std::vector<int> counts = escape_counts(config.d, config.size, view, max_iter);
  std::vector<std::complex<double>> overlay;
  if (config.overlay_n > 0) {
    const int top = std::min(config.overlay_n, config.max_n);
    check_level_cap(config.d, top);
    Cache cache(config.cache_dir);
    for (int n = 1; n <= top; ++n)
      for (const auto& r : cache.gleason_roots(config.d, n, config.bits))
        overlay.emplace_back(r.center().re.to_double(), r.center().im.to_double());
  }
  const bool svg = config.image == ImageFormat::Svg;
  const std::string name = "mandelbrot-d" + std::to_string(config.d) + (svg ? ".svg" : ".ppm");
  const fs::path path = fs::path(config.out_dir) / name;
  atomic_write(path, svg ? render_svg(counts, config.size, max_iter, overlay, view)
                         : render_ppm(counts, config.size, max_iter, overlay, view));
  Table t;
  t.header = {"image", "size", "d", "half_width", "overlay_points"};
  t.rows.push_back({name, std::to_string(config.size), std::to_string(config.d), fixed(view.half),
                    std::to_string(overlay.size())});
  return t;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Post-critically finite parameters of z^d + c: enumeration, heights, integrality, equidistribution.",
               "pcf-lab"};
  RunConfig flags;
  std::string s_text, format_text, config_path;
  app.require_subcommand(1);
  std::vector<CLI::Option*> opts;
  opts.push_back(app.add_option("--d", flags.d, "Degree d >= 2 of z^d + c"));
  opts.push_back(app.add_option("--max-n", flags.max_n, "Highest level n"));
  opts.push_back(app.add_option("--bits", flags.bits, "Certification precision in bits"));
  opts.push_back(app.add_option("--alpha", flags.alpha, "a/b, or c_k,...,c_0#i for root i of a polynomial"));
  opts.push_back(app.add_option("--S", s_text, "Comma-separated finite primes of S"));
  opts.push_back(app.add_option("--tau", flags.tau, "Kernel truncation level in (0, 1)"));
  opts.push_back(app.add_option("--C", flags.C, "Constant in the discrepancy bound"));
  opts.push_back(app.add_flag("--plot", flags.plot, "Also write an SVG plot"));
  opts.push_back(app.add_option("--cache", flags.cache_dir, "Cache directory"));
  opts.push_back(app.add_option("--out", flags.out_dir, "Directory for reports and images"));
  opts.push_back(app.add_option("--format", format_text, "tsv or structured-text"));
  app.add_option("--config", config_path, "key = value configuration file");
  const std::pair<const char*, const char*> commands[] = {
      {"enumerate", "Gleason polynomials, critical-orbit factors and certified roots into the cache"},
      {"integral-scan", "Meeting primes and S-integrality of each factor relative to alpha"},
      {"equidist", "Average log-distance of PCF parameters to alpha against the escape rate"},
      {"bounds", "Evaluate the explicit bounds and check them on enumerated roots"},
      {"plot", "Escape-time image of the multibrot set with PCF parameters overlaid"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) config = load_config_file(config_path);
    // Flags given on the command line override the file.
    const std::vector<std::string> keys = {"d", "max_n", "bits", "alpha", "S", "tau", "C", "plot", "cache", "out", "format"};
    for (std::size_t i = 0; i < opts.size(); ++i) {
      if (opts[i]->count() == 0) continue;
      const std::string& key = keys[i];
      if (key == "d") config.d = flags.d;
      else if (key == "max_n") config.max_n = flags.max_n;
      else if (key == "bits") config.bits = flags.bits;
      else if (key == "alpha") config.alpha = flags.alpha;
      else if (key == "S") config.S = parse_prime_list(s_text);
      else if (key == "tau") config.tau = flags.tau;
      else if (key == "C") config.C = flags.C;
      else if (key == "plot") config.plot = flags.plot;
      else if (key == "cache") config.cache_dir = flags.cache_dir;
      else if (key == "out") config.out_dir = flags.out_dir;
      else if (key == "format") apply_setting(config, "format", format_text);
    }
    validate(config);

    const std::string command = app.get_subcommands().front()->get_name();
    Table t;
    if (command == "enumerate") t = cmd_enumerate(config);
    else if (command == "integral-scan") t = cmd_integral_scan(config);
    else if (command == "equidist") t = cmd_equidist(config);
    else if (command == "bounds") t = cmd_bounds(config);
    else t = cmd_plot(config);
    out << t.render(config.format);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace pcf::cli
