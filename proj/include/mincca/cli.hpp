#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mincca {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,         // unreadable file, malformed input or bad flags
  kExitPrecondition = 2,  // input well-formed but outside what the command accepts
  kExitInvalid = 3,       // tree or decomposition fails validation
  kExitInternal = 4,
};

/// Runs one subcommand; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mincca
