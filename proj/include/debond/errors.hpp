#pragma once

#include <stdexcept>
#include <string>

namespace debond {

enum class ErrorKind {
  validation,
  range,
  monotonicity,
  iteration_depth,
  insufficient_front,
  contraction_failure,
  invariant_violation,
  precondition,
  configuration,
  missing_data,
  io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string pointer = {})
      : std::runtime_error(message), kind_(kind), pointer_(std::move(pointer)) {}

  ErrorKind kind() const { return kind_; }
  // JSON pointer into the offending config document, empty when not applicable.
  const std::string& pointer() const { return pointer_; }

  // Input problems map to exit code 1, everything numerical to 2.
  bool is_input_error() const;

 private:
  ErrorKind kind_;
  std::string pointer_;
};

}  // namespace debond
