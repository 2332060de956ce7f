#pragma once

#include <stdexcept>
#include <string>

namespace ymhd {

// Malformed inputs: wrong dimensions, bad headers, inconsistent field shapes.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Semantically invalid values: non-unit fiber points, tangency violations,
// out-of-range radii.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested operation is not defined for this configuration (e.g. the
// Fourier gauge fixer on a non-abelian group).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ymhd
