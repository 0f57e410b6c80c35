#ifndef SCALEVAR_FUNCTIONAL_HPP
#define SCALEVAR_FUNCTIONAL_HPP

#include <optional>

#include "scalevar/curve.hpp"
#include "scalevar/epsilon.hpp"
#include "scalevar/lagrangian.hpp"
#include "scalevar/quadrature.hpp"

namespace scalevar {

/// Phi(y[, xi]) = int_a^b L(x, y(x), v_1(x), ..., v_n(x)[, xi]) dx.
///
/// Order 1: v_k = box(y, x, eps_k), one epsilon per slot.
/// Order 2: n = 2, a single eps, v_1 = box^1 y and v_2 = box^2 y = box(y').
class Functional {
 public:
  Functional(Lagrangian lagrangian, Interval interval, EpsilonVector eps,
             QuadratureConfig quad = {}, int order = 1);

  const Lagrangian& lagrangian() const noexcept { return lagrangian_; }
  const Interval& interval() const noexcept { return interval_; }
  const EpsilonVector& eps() const noexcept { return eps_; }
  const QuadratureConfig& quadrature() const noexcept { return quad_; }
  int order() const noexcept { return order_; }

  /// Same functional with every epsilon multiplied by factor.
  Functional scaled(double factor) const;
  Functional with_eps(EpsilonVector eps) const;

  /// Quadrature split points for integrands that touch y at offsets up to
  /// nesting * eps_k: curve breakpoints shifted by j * eps_k, |j| <= nesting,
  /// plus binding kinks.
  std::vector<double> breakpoints_for(const std::vector<double>& curve_breakpoints,
                                      int nesting) const;

 private:
  Lagrangian lagrangian_;
  Interval interval_;
  EpsilonVector eps_;
  QuadratureConfig quad_;
  int order_;
};

/// u = (x, y(x), v_1(x), ..., v_n(x)[, xi]).
ArgVector arg_vector(const Functional& f, const Curve& y, double x,
                     std::optional<Complex> xi = std::nullopt);

Complex evaluate_functional(const Functional& f, const Curve& y,
                            std::optional<Complex> xi = std::nullopt);

/// Linear part F_y(h) of Phi(y + h) - Phi(y) after scale integration by
/// parts: the Euler-Lagrange term, the boundary-like box integral, and the
/// -i sum_k (eps_k/2) Sigma_{eps_k}(d_{k+2}L, h) correction. Order 1 only.
/// Throws admissibility when h.beta is below the beta condition for y.
Complex first_variation(const Functional& f, const Curve& y, const VariationCurve& h,
                        std::optional<Complex> xi = std::nullopt);

}  // namespace scalevar

#endif  // SCALEVAR_FUNCTIONAL_HPP
