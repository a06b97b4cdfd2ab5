#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace koszulkit {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,   // a verification or manifest check failed
  kExitUsage = 2,         // bad arguments, unreadable input, parse errors
  kExitComputation = 3,   // rejected input or failed computation
};

// Runs one command. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Default location of the reproduction manifest (set at build time).
std::string default_manifest_path();

}  // namespace koszulkit
