#include "debond/errors.hpp"

namespace debond {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::range: return "range";
    case ErrorKind::monotonicity: return "monotonicity";
    case ErrorKind::iteration_depth: return "iteration_depth";
    case ErrorKind::insufficient_front: return "insufficient_front";
    case ErrorKind::contraction_failure: return "contraction_failure";
    case ErrorKind::invariant_violation: return "invariant_violation";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::missing_data: return "missing_data";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

bool Error::is_input_error() const {
  switch (kind_) {
    case ErrorKind::validation:
    case ErrorKind::precondition:
    case ErrorKind::configuration:
    case ErrorKind::io:
      return true;
    default:
      return false;
  }
}

}  // namespace debond
