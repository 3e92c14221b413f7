#pragma once

// Command dispatch. Exit-code contract: 0 = all assertions passed,
// 1 = assertion failure, 2 = input error, 3 = convergence/degeneracy.

namespace outcx {

int run_cli(int argc, char** argv);

}  // namespace outcx
