#ifndef SCALEVAR_OPERATORS_HPP
#define SCALEVAR_OPERATORS_HPP

// Scale-calculus difference operators. Every operator is a free function
// template over any callable double -> (real or complex); FunctionHandle and
// Curve are the usual arguments, lambdas work too.

#include <complex>

#include "scalevar/epsilon.hpp"
#include "scalevar/function_handle.hpp"

namespace scalevar {

class Curve;

enum class Sign : int { plus = 1, minus = -1 };

namespace detail {

inline Complex times_i(Complex z) noexcept { return {-z.imag(), z.real()}; }

template <class F>
Complex sample(const F& f, double x) {
  return Complex(f(x));
}

/// Forward and backward quotients (Delta+, Delta-) from three samples.
template <class F>
std::pair<Complex, Complex> quantum_pair(const F& f, double x, double eps) {
  const Complex forward = sample(f, x + eps);
  const Complex centre = sample(f, x);
  const Complex backward = sample(f, x - eps);
  return {(forward - centre) / eps, (centre - backward) / eps};
}

}  // namespace detail

/// sigma * (f(x + sigma*eps) - f(x)) / eps. For Sign::minus this is the
/// eps-left quantum derivative -(f(x - eps) - f(x)) / eps.
template <class F>
Complex delta_sigma(const F& f, double x, Epsilon eps, Sign sigma) {
  const double s = static_cast<double>(static_cast<int>(sigma));
  const double e = eps.value();
  return s * (detail::sample(f, x + s * e) - detail::sample(f, x)) / e;
}

/// Scale derivative: (D+ + D-)/2 - i (D+ - D-)/2.
template <class F>
Complex box(const F& f, double x, Epsilon eps) {
  const auto [plus, minus] = detail::quantum_pair(f, x, eps.value());
  return 0.5 * (plus + minus) - 0.5 * detail::times_i(plus - minus);
}

/// Conjugate scale operator: (D+ + D-)/2 + i (D+ - D-)/2. On real-valued f
/// this is the complex conjugate of box(f); on complex-valued f it is the
/// i-sign-flipped operator, not pointwise conjugation.
template <class F>
Complex box_conj(const F& f, double x, Epsilon eps) {
  const auto [plus, minus] = detail::quantum_pair(f, x, eps.value());
  return 0.5 * (plus + minus) + 0.5 * detail::times_i(plus - minus);
}

/// Correction of the scale product rule:
///   box p box q - conj p box q - box p conj q - conj p conj q.
template <class P, class Q>
Complex sigma_correction(const P& p, const Q& q, double x, Epsilon eps) {
  const Complex bp = box(p, x, eps);
  const Complex cp = box_conj(p, x, eps);
  const Complex bq = box(q, x, eps);
  const Complex cq = box_conj(q, x, eps);
  return bp * bq - cp * bq - bp * cq - cp * cq;
}

inline constexpr double kDefaultDiffStep = 1e-5;

/// Classical central difference (f(x+h) - f(x-h)) / 2h.
template <class F>
Complex classical_diff(const F& f, double x, double step = kDefaultDiffStep) {
  if (!(step > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "classical_diff step must be positive");
  }
  return (detail::sample(f, x + step) - detail::sample(f, x - step)) / (2.0 * step);
}

/// k-th scale derivative: box applied to the (k-1)-th classical derivative of
/// the curve. Uses the curve's analytic derivative stack when it reaches
/// order k-1; a first derivative falls back to central differences otherwise.
/// k == 1 is exactly box(curve, x, eps).
Complex box_k(const Curve& curve, double x, Epsilon eps, int k);

/// Handle for the (k-1)-th derivative used by box_k (analytic or fallback).
FunctionHandle derivative_handle(const Curve& curve, int order);

}  // namespace scalevar

#endif  // SCALEVAR_OPERATORS_HPP
