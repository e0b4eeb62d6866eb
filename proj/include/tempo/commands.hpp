#pragma once

namespace tempo {

// Full command-line driver: parses arguments, runs one subcommand, writes a
// CSV result.  Returns the process exit code: 0 on success, 2 for usage or
// validation problems, 1 for runtime failures (including failed self-checks).
int run_command(int argc, char** argv);

}  // namespace tempo
