#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cuboid::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kUnattainable = 3 };

/// Runs one command line (without the program name).  Tables go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "x" or "p/q".  A fraction is divided once, so "1/3" gives the
/// double nearest 1/3.
std::optional<double> parse_real(std::string_view text);

/// Locale-independent rendering with 17 significant digits.
std::string format_real(double x);

}  // namespace cuboid::cli
