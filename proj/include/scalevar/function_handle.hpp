#ifndef SCALEVAR_FUNCTION_HANDLE_HPP
#define SCALEVAR_FUNCTION_HANDLE_HPP

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace scalevar {

using Complex = std::complex<double>;

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  bool contains(const Interval& other) const noexcept {
    return other.lo >= lo && other.hi <= hi;
  }
  double length() const noexcept { return hi - lo; }

  static Interval everywhere() { return {}; }
};

/// Immutable map real -> complex on a closed domain, with the abscissae where
/// smoothness fails. Evaluating outside the domain throws ErrorKind::out_of_range.
class FunctionHandle {
 public:
  using Fn = std::function<Complex(double)>;

  FunctionHandle() = default;
  FunctionHandle(Fn fn, Interval domain = Interval::everywhere(),
                 std::vector<double> breakpoints = {});

  Complex operator()(double x) const;

  const Interval& domain() const noexcept { return domain_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  /// Same function, narrower domain. Breakpoints outside the new domain are dropped.
  FunctionHandle restricted(Interval domain) const;

  explicit operator bool() const noexcept { return static_cast<bool>(fn_); }

 private:
  std::shared_ptr<const Fn> fn_;
  Interval domain_;
  std::vector<double> breakpoints_;
};

FunctionHandle operator+(const FunctionHandle& f, const FunctionHandle& g);
FunctionHandle operator*(const FunctionHandle& f, const FunctionHandle& g);
FunctionHandle operator*(Complex alpha, const FunctionHandle& f);

}  // namespace scalevar

#endif  // SCALEVAR_FUNCTION_HANDLE_HPP
