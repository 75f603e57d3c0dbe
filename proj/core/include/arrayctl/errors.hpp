#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arrayctl {

enum class ErrorKind {
  dimension,
  domain,
  ill_conditioned_spectrum,
  inconsistent_spectrum,
  invariance_violation,
  numerical_failure,
  internal_consistency,
  unsupported_render,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds that indicate a numerical breakdown rather than bad input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace arrayctl
