#include "scalevar/lagrangian.hpp"

#include <algorithm>

#include "scalevar/error.hpp"
#include "scalevar/operators.hpp"

namespace scalevar {

Lagrangian::Lagrangian(std::string_view text, int n, bool has_param, BindingTable bindings)
    : text_(text), n_(n), has_param_(has_param), bindings_(std::move(bindings)) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "Lagrangian needs at least one scale slot");
  Signature sig{n, has_param, {}};
  for (const auto& [name, binding] : bindings_) sig.externals.push_back(name);
  body_ = parse(text, sig);
  partials_.push_back(diff_expr(body_, Variable::y()));
  for (int k = 1; k <= n; ++k) partials_.push_back(diff_expr(body_, Variable::v(k)));
  if (has_param) partials_.push_back(diff_expr(body_, Variable::xi()));
}

const Expr& Lagrangian::partial_expr(int slot) const {
  const int last = has_param_ ? param_slot() : n_ + 2;
  if (slot < 2 || slot > last) {
    throw Error(ErrorKind::invalid_argument,
                "partial slot " + std::to_string(slot) + " outside [2, " + std::to_string(last) + "]");
  }
  return partials_[static_cast<std::size_t>(slot - 2)];
}

void Lagrangian::check(const ArgVector& u) const {
  if (static_cast<int>(u.v.size()) != n_) {
    throw Error(ErrorKind::invalid_argument, "argument vector arity " + std::to_string(u.v.size()) +
                                                 " does not match n = " + std::to_string(n_));
  }
  if (has_param_ && !u.param) {
    throw Error(ErrorKind::invalid_argument, "Lagrangian depends on xi but none was supplied");
  }
}

Complex Lagrangian::operator()(const ArgVector& u, const EpsilonVector& eps) const {
  check(u);
  return eval_expr(body_, u, eps, bindings_);
}

Complex Lagrangian::partial(int slot, const ArgVector& u, const EpsilonVector& eps) const {
  check(u);
  return eval_expr(partial_expr(slot), u, eps, bindings_);
}

std::vector<double> Lagrangian::binding_breakpoints(const EpsilonVector& eps) const {
  std::vector<double> out;
  for (const auto& [name, binding] : bindings_) {
    if (!binding.breakpoints) continue;
    const auto bps = binding.breakpoints(eps);
    out.insert(out.end(), bps.begin(), bps.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Lagrangian Lagrangian::with_bindings(BindingTable bindings) const {
  return Lagrangian(text_, n_, has_param_, std::move(bindings));
}

Complex partial(const Lagrangian& lagrangian, int slot, const ArgVector& u,
                const EpsilonVector& eps) {
  return lagrangian.partial(slot, u, eps);
}

Binding bind_value(const Curve& curve) {
  Binding b;
  b.fn = [curve](double x, const EpsilonVector&) { return Complex(curve(x), 0.0); };
  b.breakpoints = [curve](const EpsilonVector&) { return curve.breakpoints(); };
  return b;
}

Binding bind_box(const Curve& curve, int slot) {
  if (slot < 1) throw Error(ErrorKind::invalid_argument, "binding slot counts from 1");
  const auto index = static_cast<std::size_t>(slot - 1);
  auto pick = [index](const EpsilonVector& eps) {
    if (index >= eps.size()) {
      throw Error(ErrorKind::invalid_argument, "binding refers to a missing epsilon slot");
    }
    return eps[index];
  };
  Binding b;
  b.fn = [curve, pick](double x, const EpsilonVector& eps) {
    return box(curve.handle(), x, pick(eps));
  };
  b.breakpoints = [curve, pick](const EpsilonVector& eps) {
    const double e = pick(eps).value();
    std::vector<double> out;
    for (double p : curve.breakpoints()) {
      out.push_back(p - e);
      out.push_back(p);
      out.push_back(p + e);
    }
    return out;
  };
  return b;
}

}  // namespace scalevar
