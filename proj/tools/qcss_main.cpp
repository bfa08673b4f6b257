#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qcss/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  qcss::CliEnv env;
  env.color = ::isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
  return qcss::run_cli(args, std::cout, std::cerr, env);
}
