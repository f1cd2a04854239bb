#pragma once

namespace hiercast {

// Entry point for the command-line front end. Returns the process exit code:
// 0 success, 2 configuration errors, 3 data errors, 4 unexpected failures.
int run_cli(int argc, char** argv);

}  // namespace hiercast
