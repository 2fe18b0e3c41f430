#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcu::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,      ///< verify found values outside tolerance
  kInvalidInput = 2,  ///< bad flag or parameter; error JSON on stderr
  kIoFailure = 3,     ///< a file could not be read or written
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` unless --out names a file; errors are written to `err` as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats a double with 17 significant digits, the CSV number format.
std::string format_number(double v);

}  // namespace qcu::cli
