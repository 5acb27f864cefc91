#ifndef TSAPPROVAL_TOOLS_CLI_HPP
#define TSAPPROVAL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tsapproval::cli {

inline constexpr int kExitOk = 0;
/// Infeasible instance, violation found, or a witness that does not replay.
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsapproval::cli

#endif  // TSAPPROVAL_TOOLS_CLI_HPP
