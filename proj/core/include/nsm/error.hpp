#pragma once

#include <stdexcept>
#include <string>

namespace nsm {

/// Operand dimensions disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A NaN or infinity reached a place that requires finite numbers.
///
/// The run loop treats this as a divergence marker rather than a failure.
class NonFiniteError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine could not produce a trustworthy answer
/// (singular factorization, iteration cap reached).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nsm
