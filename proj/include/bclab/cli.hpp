#pragma once

namespace bclab {

/// Command-line entry point. Exit codes: 0 success, 1 invalid configuration
/// or usage, 2 capability error, 3 internal assertion or diagram contradiction.
int cli_main(int argc, char** argv);

}  // namespace bclab
