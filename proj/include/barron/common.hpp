#pragma once

#include <stdexcept>
#include <string>

namespace barron {

inline constexpr const char* kToolVersion = "barronnet 0.1.0";
inline constexpr double kPi = 3.14159265358979323846;

// Invalid inputs, malformed files, violated preconditions.  The CLI maps this
// to exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that started from valid inputs but cannot be completed
// (e.g., a violated weight audit).  CLI exit code 3.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace barron
