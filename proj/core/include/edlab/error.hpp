#pragma once

#include <stdexcept>
#include <string>

namespace edlab {

/// Raised when a precondition of a numerical operation is violated
/// (dimension mismatch, non-finite input, box outside the grid, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(message);
}

}  // namespace edlab
