#pragma once

#include <stdexcept>
#include <string>

namespace pamdemap {

/// Raised for invalid arguments, rank-deficient fits and malformed configs.
class DemapError : public std::runtime_error {
 public:
  explicit DemapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pamdemap
