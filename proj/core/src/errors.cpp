#include "arrayctl/errors.hpp"

namespace arrayctl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::ill_conditioned_spectrum: return "ill-conditioned spectrum";
    case ErrorKind::inconsistent_spectrum: return "inconsistent spectrum";
    case ErrorKind::invariance_violation: return "invariance violation";
    case ErrorKind::numerical_failure: return "numerical failure";
    case ErrorKind::internal_consistency: return "internal consistency error";
    case ErrorKind::unsupported_render: return "unsupported render";
  }
  return "error";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ill_conditioned_spectrum:
    case ErrorKind::inconsistent_spectrum:
    case ErrorKind::invariance_violation:
    case ErrorKind::numerical_failure:
    case ErrorKind::internal_consistency:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace arrayctl
