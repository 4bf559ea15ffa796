#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fibercouple::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumerical = 4;

/// Runs the command line `args` (program name excluded) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV header and row formatting shared with tests.
inline constexpr const char* kCurveHeader = "w0_m,y,c_closed,c_numeric,rel_err";
std::string format_csv_number(double v);

}  // namespace fibercouple::cli
