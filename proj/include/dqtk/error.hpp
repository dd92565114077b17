#pragma once

#include <stdexcept>
#include <string>

namespace dqtk {

// All recoverable toolkit failures (bad input, violated preconditions,
// stale decision files) are reported as Error.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dqtk
