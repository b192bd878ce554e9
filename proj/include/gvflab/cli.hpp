#pragma once

namespace gvflab {

/// Entry point behind the command-line tool; exposed so tests can drive the
/// exact argv handling. Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace gvflab
