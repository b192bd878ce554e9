#pragma once

#include <stdexcept>
#include <string>

namespace gvflab {

/// Invalid configuration: bad field values, mismatched dimensions,
/// references to unknown ids.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite values or invariant violations detected during learning.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// The behavior policy assigns zero probability to the taken action.
class SupportError : public std::runtime_error {
 public:
  explicit SupportError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gvflab
