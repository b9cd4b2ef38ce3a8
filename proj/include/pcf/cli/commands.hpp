#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pcf/cli/config.hpp"
#include "pcf/errors.hpp"

namespace pcf::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitUsage = 2,
  kExitDegreeCap = 3,
  kExitHypothesis = 4,
  kExitPrecision = 5,
  kExitKernelSingular = 6,
  kExitStructure = 7,
  kExitNotDivisible = 8,
  kExitIo = 9,
};

int exit_code(ErrorKind kind);

/// A report table rendered either as TSV (header row first) or as
/// structured text (one `[row]` block of key = value lines per row).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string render(OutputFormat format) const;
};

Table cmd_enumerate(const RunConfig& config);
Table cmd_integral_scan(const RunConfig& config);
Table cmd_equidist(const RunConfig& config);
Table cmd_bounds(const RunConfig& config);
/// Writes the image into out_dir and returns a one-row table naming it.
Table cmd_plot(const RunConfig& config);

/// Full command-line entry point: parses flags and the optional config
/// file, dispatches, prints the report to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pcf::cli
