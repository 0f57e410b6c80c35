#ifndef SCALEVAR_ERROR_HPP
#define SCALEVAR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace scalevar {

enum class ErrorKind {
  invalid_argument,
  out_of_range,         // evaluation outside a handle's domain
  insufficient_domain,  // curve domain does not cover the padded interval
  unsupported_order,
  insufficient_data,
  parse,
  undeclared_variable,
  unbound_reference,
  division_by_zero,
  admissibility,        // variation violates the beta condition
  condition_violation,  // a required hypothesis fails, e.g. y extremal for the constraint
  nonconvergence,
  validation,           // problem-spec validation
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace scalevar

#endif  // SCALEVAR_ERROR_HPP
