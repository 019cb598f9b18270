#pragma once

#include <stdexcept>
#include <string>

namespace uqhyp {

// Invalid input (bad bounds, bad sizes, bad configuration values).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A state left the admissible set and the scheme cannot continue.
struct UnrecoverableState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace uqhyp
