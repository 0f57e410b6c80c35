#include "scalevar/error.hpp"

namespace scalevar {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::insufficient_domain: return "insufficient_domain";
    case ErrorKind::unsupported_order: return "unsupported_order";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::parse: return "parse";
    case ErrorKind::undeclared_variable: return "undeclared_variable";
    case ErrorKind::unbound_reference: return "unbound_reference";
    case ErrorKind::division_by_zero: return "division_by_zero";
    case ErrorKind::admissibility: return "admissibility";
    case ErrorKind::condition_violation: return "condition_violation";
    case ErrorKind::nonconvergence: return "nonconvergence";
    case ErrorKind::validation: return "validation";
  }
  return "unknown";
}

}  // namespace scalevar
