#include "scalevar/operators.hpp"

#include "scalevar/curve.hpp"

namespace scalevar {

FunctionHandle derivative_handle(const Curve& curve, int order) {
  if (order < 0) {
    throw Error(ErrorKind::invalid_argument, "derivative order must be nonnegative");
  }
  if (order <= curve.derivative_order()) return curve.derivative(order);
  if (order == 1) {
    // Central-difference fallback; the domain shrinks by one step on each side.
    const FunctionHandle& f = curve.handle();
    const Interval dom{f.domain().lo + kDefaultDiffStep, f.domain().hi - kDefaultDiffStep};
    return FunctionHandle([f](double x) { return Complex(classical_diff(f, x).real(), 0.0); },
                          dom, f.breakpoints());
  }
  throw Error(ErrorKind::unsupported_order,
              "curve provides no derivative of order " + std::to_string(order));
}

Complex box_k(const Curve& curve, double x, Epsilon eps, int k) {
  if (k < 1) throw Error(ErrorKind::invalid_argument, "box_k requires k >= 1");
  if (k == 1) return box(curve.handle(), x, eps);
  return box(derivative_handle(curve, k - 1), x, eps);
}

}  // namespace scalevar
