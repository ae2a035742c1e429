#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcn {

// Exit codes shared by the subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitDiffer = 1,    // check: functions differ
  kExitInput = 2,     // malformed input or usage
  kExitInvalid = 3,   // invalid description, point outside the cube
  kExitCap = 4,       // membership search exceeded --cap
  kExitInternal = 70  // certification failure
};

// Runs `synth`, `eval` or `check`. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcn
