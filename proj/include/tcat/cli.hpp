#ifndef TCAT_CLI_HPP
#define TCAT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tcat {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailure = 1,
  kExitParseOrIo = 2,
  kExitManifestMismatch = 3,
  kExitUsage = 4,
};

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace tcat

#endif
