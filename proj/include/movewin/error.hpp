#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace movewin {

/// Rejected input: bad dimension, window size, grid mismatch, unknown id, ...
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A NaN or Inf appeared in the coefficients during time stepping.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::int64_t step, std::int64_t mode_index)
      : std::runtime_error(what), step_(step), mode_index_(mode_index) {}

  std::int64_t step() const noexcept { return step_; }
  std::int64_t mode_index() const noexcept { return mode_index_; }

 private:
  std::int64_t step_;
  std::int64_t mode_index_;
};

/// The packet reached the window boundary more often than the policy allows.
class ExtensionLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace movewin
