#ifndef EFEQ_CLI_HPP
#define EFEQ_CLI_HPP

#include <iosfwd>

namespace efeq::cli {

/// Exit codes of `solve`; other subcommands use 0 for success.
enum ExitCode : int {
  kIsoWins = 0,
  kAisWins = 1,
  kBudgetExceeded = 2,
  kVerificationFailed = 3,
  kChecksFailed = 4,
  kUsage = 10,
  kBadInput = 11,
};

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace efeq::cli

#endif  // EFEQ_CLI_HPP
