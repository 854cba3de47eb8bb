#pragma once

#include <stdexcept>
#include <string>

namespace grodeph {

/// A requested computation exceeds the configured dense-matrix size cap.
class ResourceCapError : public std::runtime_error {
 public:
  explicit ResourceCapError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative numerical procedure failed to converge, or a computation
/// produced a non-finite value where one is forbidden.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace grodeph
