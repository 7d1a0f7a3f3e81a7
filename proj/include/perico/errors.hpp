#pragma once

#include <stdexcept>
#include <string>

namespace perico {

// Bad input: wrong argument, violated precondition. CLI exit code 2.
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Budget or cap exhausted before an answer was certified. CLI exit code 3.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace perico
