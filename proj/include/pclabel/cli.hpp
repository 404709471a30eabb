#pragma once

namespace pclabel::cli {

// Entry point shared by the binary and the CLI tests.
// Exit codes: 0 success, 2 I/O or format failure, 3 validation failure.
int run(int argc, const char* const* argv);

}  // namespace pclabel::cli
