#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsc::cli {

/// Exit codes: 0 success, 1 findings (counterexamples, failed properties,
/// unterminated orbits), 2 usage or input errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` unless redirected with --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Tool version embedded in every output header.
const char* version();

}  // namespace rsc::cli
