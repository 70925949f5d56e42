#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hamgen::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a comma-separated list of decimals; throws ParseError naming `flag`.
std::vector<double> parse_list(const std::string& text, const std::string& flag);

}  // namespace hamgen::cli
