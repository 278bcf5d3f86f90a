#pragma once

#include <ostream>

namespace procscope::cli {

enum ExitCode : int {
  kOk = 0,
  kFindings = 1,
  kUsage = 2,
  kFailure = 3,  // I/O or model error
};

/// Runs one `procscope` invocation. Reports and exports go to `out`,
/// diagnostics to `err`. ANSI styling is used only when `terminal` is set
/// and PROCSCOPE_NO_COLOR is unset or empty.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            bool terminal = false);

}  // namespace procscope::cli
