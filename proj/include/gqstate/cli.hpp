#pragma once

namespace gqstate {

// Command-line entry point (exposed for tests); returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace gqstate
