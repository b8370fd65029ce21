#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moritoric::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kPropertyViolated = 1;
inline constexpr int kInvalidInput = 2;

/// Runs one subcommand. args excludes the program name; "-" as a fan path
/// reads the document from in. The JSON report (or {"error", "detail"}) is
/// written to out.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out);

}  // namespace moritoric::cli
