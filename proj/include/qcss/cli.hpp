#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcss {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitClaimFailure = 1,
  kExitInvalidParams = 2,
  kExitIo = 3,
};

struct CliEnv {
  bool color = false;
};

// args excludes the program name. Reports go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnv& env = {});

}  // namespace qcss
