#pragma once

#include <stdexcept>
#include <string>

namespace awq {

// Invalid input: bad parameter domains, malformed scenario files.
// Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failure of a numerical procedure on otherwise valid input: eigensolver
// breakdown, non-convergent series, resonant denominators, empty fit
// windows. Maps to CLI exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace awq
