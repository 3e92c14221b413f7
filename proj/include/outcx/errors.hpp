#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace outcx {

// Exit-code contract: 0 = all assertions passed, 1 = assertion failure,
// 2 = input error, 3 = convergence/degeneracy error.

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  std::vector<double> partial;  // the estimates produced before giving up
  explicit ConvergenceError(const std::string& what, std::vector<double> seq = {})
      : std::runtime_error(what), partial(std::move(seq)) {}
};

struct DegenerateSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace outcx
