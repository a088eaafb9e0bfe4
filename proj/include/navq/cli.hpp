#pragma once

#include <ostream>

namespace navq {

enum ExitCode { kExitOk = 0, kExitCounterexample = 1, kExitUsage = 2, kExitResource = 3 };

// Full command-line front end; results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace navq
