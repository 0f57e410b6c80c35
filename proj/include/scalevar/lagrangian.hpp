#ifndef SCALEVAR_LAGRANGIAN_HPP
#define SCALEVAR_LAGRANGIAN_HPP

#include <string>
#include <string_view>
#include <vector>

#include "scalevar/curve.hpp"
#include "scalevar/expr.hpp"

namespace scalevar {

/// L(x, y, v_1..v_n[, xi]) with exact symbolic partials cached at construction.
///
/// Slots follow the positional convention of the argument vector
/// u = (x, y, v_1, ..., v_n, xi): slot 2 is y, slots 3..n+2 are v_1..v_n and
/// slot n+3 is the parameter xi (when declared).
class Lagrangian {
 public:
  Lagrangian(std::string_view text, int n, bool has_param = false, BindingTable bindings = {});

  int n() const noexcept { return n_; }
  bool has_param() const noexcept { return has_param_; }
  int param_slot() const noexcept { return n_ + 3; }
  const std::string& text() const noexcept { return text_; }
  const Expr& body() const noexcept { return body_; }
  const BindingTable& bindings() const noexcept { return bindings_; }

  /// Cached symbolic partial for slot in {2, ..., n+2} or param_slot().
  const Expr& partial_expr(int slot) const;

  Complex operator()(const ArgVector& u, const EpsilonVector& eps) const;
  Complex partial(int slot, const ArgVector& u, const EpsilonVector& eps) const;

  /// Union of the bound handles' kinks at the given epsilons.
  std::vector<double> binding_breakpoints(const EpsilonVector& eps) const;

  /// Same text re-parsed against another binding table.
  Lagrangian with_bindings(BindingTable bindings) const;

 private:
  void check(const ArgVector& u) const;

  std::string text_;
  int n_ = 1;
  bool has_param_ = false;
  Expr body_;
  std::vector<Expr> partials_;  // index 0 -> slot 2
  BindingTable bindings_;
};

/// Free-function form of Lagrangian::partial.
Complex partial(const Lagrangian& lagrangian, int slot, const ArgVector& u,
                const EpsilonVector& eps);

/// x -> curve(x).
Binding bind_value(const Curve& curve);
/// x -> box(curve, x, eps_slot) for the ambient epsilon vector (slot counts from 1).
Binding bind_box(const Curve& curve, int slot = 1);

}  // namespace scalevar

#endif  // SCALEVAR_LAGRANGIAN_HPP
