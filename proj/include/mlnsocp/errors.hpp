#pragma once

#include <stdexcept>
#include <string>

namespace mlnsocp {

// Invalid NetworkConfig / RunConfig values.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse (wrong node role, length mismatch, ...).
class UsageError : public std::logic_error {
 public:
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

// Bad numerical input (non-finite measurement, empty anchor set, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mlnsocp
