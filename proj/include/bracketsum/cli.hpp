#pragma once

// CLI entry point; returns the process exit code (0 iff every invariant
// asserted by the invoked subcommand held).

namespace bracketsum {

int run_cli(int argc, const char* const* argv);

}  // namespace bracketsum
