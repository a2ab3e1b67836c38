#ifndef WITLOOP_TOOLS_COMMANDS_HPP
#define WITLOOP_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace witloop::cli
{

enum ExitCode : int
{
  kExitOk = 0,
  kExitInput = 2,     // unreadable/malformed input, bad flag values
  kExitSemantic = 3,  // dimension mismatch, non-Hermitian witness, invalid state
  kExitNothing = 4,   // <W>_m >= 0: nothing to certify
};

// Runs the command line `args` (without the program name). Reports go to
// `out`, diagnostics to `err`. `color` enables ANSI colouring of verdicts.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace witloop::cli

#endif  // WITLOOP_TOOLS_COMMANDS_HPP
