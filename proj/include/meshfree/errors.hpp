#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meshfree {

/// Invalid configuration: bad geometry parameters, duplicate centers, missing data.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was requested for an operator family that does not support it
/// (e.g. the symmetric scheme for a non-self-adjoint operator).
class UnsupportedOperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact zero pivot met during LU factorization.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t pivot_index, double condition_estimate, const std::string& what)
      : std::runtime_error(what), pivot_index_(pivot_index), condition_(condition_estimate) {}

  std::size_t pivot_index() const { return pivot_index_; }
  /// Infinity when no estimate could be formed.
  double condition_estimate() const { return condition_; }

 private:
  std::size_t pivot_index_;
  double condition_;
};

}  // namespace meshfree
