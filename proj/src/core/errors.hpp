// Exception taxonomy mirrored by the C API status codes.
#pragma once

#include <stdexcept>
#include <string>

namespace tgsl {

struct InvalidArgumentError : std::runtime_error {
  explicit InvalidArgumentError(const std::string& m) : std::runtime_error(m) {}
};

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& m) : std::runtime_error(m) {}
};

// Interface left the admissible region (touched the guard band, etc.).
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& m) : std::runtime_error(m) {}
};

// Internal consistency assertion failed (solvability defect, jump mismatch).
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& m) : std::runtime_error(m) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace tgsl
