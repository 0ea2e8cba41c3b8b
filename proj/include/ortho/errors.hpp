#pragma once

#include <stdexcept>
#include <string>

namespace ortho {

// Raised when an enumeration would exceed its configured bounds (lattice
// boxes, visited sets, integer widths). Maps to exit code 3 in the CLI.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a pruned search fails its doubled-slack stabilization check.
class StabilizationError : public std::runtime_error {
 public:
  explicit StabilizationError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ortho
