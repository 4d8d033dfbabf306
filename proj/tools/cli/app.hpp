#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spectral_enclose/error.hpp"

namespace spectral::cli {

/// 0 success, 2 config error, 3 shift in spectrum, 4 solver failure, 5 inconsistent enclosure.
int exit_code_for(ErrorKind kind) noexcept;

/// Runs one command line (without the program name). Reports go to the --out file or to
/// `out`, with a human summary on `out` when a file is written. Failures are written to
/// `err` as one JSON object; warnings about a report written to `out` go to `err` as text.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectral::cli
