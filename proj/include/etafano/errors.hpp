#pragma once

#include <stdexcept>
#include <string>

namespace etafano {

// Raised when an input document (or a CLI flag) fails schema checks or a
// stated mathematical precondition. The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a well-formed request cannot be computed: unsupported algebraic
// degree, missing optional data a later stage needs, geometry that is
// inconsistent with the engine's assumptions. The CLI maps this to exit 3.
struct ComputationError : std::runtime_error {
  explicit ComputationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace etafano
