#pragma once

namespace wsn {

inline constexpr const char* kToolVersion = "1.0.0";

// Entry point for the wsnsim command-line tool.
// Exit codes: 0 success, 1 config or runtime error, 2 expectation mismatch
// (the canned scenario matrix, or a replay that fails to reproduce).
int run_cli(int argc, char** argv);

}  // namespace wsn
