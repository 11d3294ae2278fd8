#pragma once

#include <stdexcept>
#include <string>

namespace isac {

/// Invalid or inconsistent configuration (bad parameter ranges, non-PD
/// covariance assemblies, malformed experiment files).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown inside an otherwise valid computation
/// (failed factorization, overflow in a determinant chain).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isac
