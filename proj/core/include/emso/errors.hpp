#pragma once

#include <stdexcept>

namespace emso {

// Instance is too large for the exact algorithm or a search budget ran out.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric procedure failed to converge or left the representable range.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace emso
