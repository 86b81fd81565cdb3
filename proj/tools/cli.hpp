#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diagform::cli {

constexpr int kOk = 0;
constexpr int kInternalError = 1;
constexpr int kInputError = 2;

/// Runs one command line (program name excluded). Writes the report to `out`
/// and diagnostics to `err`. Returns 0 for any computed verdict and 2 for
/// malformed input or inconsistent flags.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace diagform::cli
