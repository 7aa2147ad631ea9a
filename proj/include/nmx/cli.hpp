#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nmx {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitUsage = 2,
    kExitIo = 3,
};

/// Entry point for the `nmx` tool. `args` excludes the program name.
///
///   validate <kb>
///   diagnose [--kb F]
///   match [--kb F] --facts FILE [--engine rete|naive]
///   serve [--kb F] [--host H] [--port N] [--static DIR] [--log FILE]
///   bench [--kb F] --facts N [--seed S]
///
/// `serve` blocks until SIGINT/SIGTERM. NMX_LOG supplies the default
/// `--log` path.
int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nmx
