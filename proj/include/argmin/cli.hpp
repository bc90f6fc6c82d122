#pragma once

namespace argmin {

// Entry point behind the argmin_cli binary. Exit codes: 0 success, 1 check
// failure, 2 usage error, 3 numerical-convergence failure.
int run_cli(int argc, char** argv);

}  // namespace argmin
