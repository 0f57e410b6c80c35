#include "scalevar/residual.hpp"

#include <algorithm>

#include "scalevar/error.hpp"

namespace scalevar {

std::string_view to_string(ExtremalVerdict v) noexcept {
  switch (v) {
    case ExtremalVerdict::extremal: return "extremal";
    case ExtremalVerdict::not_extremal: return "not-extremal";
    case ExtremalVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Eigen::VectorXd residual_grid(Interval interval, int grid_n) {
  if (grid_n < 1) throw Error(ErrorKind::invalid_argument, "grid_n must be at least 1");
  Eigen::VectorXd grid(grid_n);
  const double step = interval.length() / (grid_n + 1);
  for (int i = 0; i < grid_n; ++i) grid(i) = interval.lo + (i + 1) * step;
  return grid;
}

Eigen::VectorXcd ResidualReport::limits() const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(bracketed.size()));
  for (std::size_t i = 0; i < bracketed.size(); ++i) {
    if (!bracketed[i].limit) {
      throw Error(ErrorKind::condition_violation,
                  "residual bracket diverges at x = " + std::to_string(grid(static_cast<Eigen::Index>(i))));
    }
    out(static_cast<Eigen::Index>(i)) = *bracketed[i].limit;
  }
  return out;
}

namespace {

/// Scales a ladder so that its rungs track eps_1 of the functional.
LadderConfig ladder_for(const Functional& f, const LadderConfig& ladder) {
  ladder.validate();
  LadderConfig local = ladder;
  local.eps0 = f.eps()[0].value();
  return local;
}

ExtremalVerdict verdict_of(const std::vector<BracketResult>& brackets) {
  bool all_zero = true;
  for (const auto& b : brackets) {
    if (b.verdict == BracketVerdict::divergent) return ExtremalVerdict::inconclusive;
    all_zero = all_zero && b.is_zero();
  }
  return all_zero ? ExtremalVerdict::extremal : ExtremalVerdict::not_extremal;
}

ExtremalVerdict combine(ExtremalVerdict residual, const BracketResult& param) {
  if (residual == ExtremalVerdict::inconclusive || param.verdict == BracketVerdict::divergent)
    return ExtremalVerdict::inconclusive;
  if (residual == ExtremalVerdict::extremal && param.is_zero()) return ExtremalVerdict::extremal;
  return ExtremalVerdict::not_extremal;
}

/// Evaluates point_residual(g, x) on the grid for every rung of the ladder and
/// brackets each grid point.
template <class PointResidual>
ResidualReport ladder_residual(const Functional& f, Interval interval, int grid_n,
                               const LadderConfig& ladder, const PointResidual& point_residual) {
  const LadderConfig local = ladder_for(f, ladder);
  ResidualReport report;
  report.grid = residual_grid(interval, grid_n);
  const auto m = report.grid.size();
  std::vector<std::vector<Complex>> samples(static_cast<std::size_t>(m));
  double factor = 1.0;
  for (int j = 0; j < local.count; ++j, factor *= local.ratio) {
    const Functional g = f.scaled(factor);
    for (Eigen::Index i = 0; i < m; ++i) {
      samples[static_cast<std::size_t>(i)].push_back(point_residual(g, report.grid(i)));
    }
  }
  report.values.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    auto& s = samples[static_cast<std::size_t>(i)];
    report.values(i) = s.front();
    report.bracketed.push_back(bracket_samples(std::move(s), local));
  }
  report.sup_norm = m > 0 ? report.values.cwiseAbs().maxCoeff() : 0.0;
  report.verdict = verdict_of(report.bracketed);
  return report;
}

Complex order1_point(const Functional& g, const Curve& y, double x, std::optional<Complex> xi) {
  const Lagrangian& lag = g.lagrangian();
  const EpsilonVector& eps = g.eps();
  Complex r = lag.partial(2, arg_vector(g, y, x, xi), eps);
  for (int k = 1; k <= lag.n(); ++k) {
    const auto p = [&, k](double t) { return lag.partial(k + 2, arg_vector(g, y, t, xi), eps); };
    r -= box(p, x, eps[static_cast<std::size_t>(k - 1)]);
  }
  return r;
}

BracketResult bracket_param_integral(const Functional& f, const Curve& y, Complex xi,
                                     const LadderConfig& ladder) {
  const LadderConfig local = ladder_for(f, ladder);
  std::vector<Complex> samples;
  double factor = 1.0;
  for (int j = 0; j < local.count; ++j, factor *= local.ratio) {
    samples.push_back(param_integral(f.scaled(factor), y, xi));
  }
  return bracket_samples(std::move(samples), local);
}

}  // namespace

Complex param_integral(const Functional& f, const Curve& y, Complex xi) {
  const Lagrangian& lag = f.lagrangian();
  if (!lag.has_param()) {
    throw Error(ErrorKind::invalid_argument, "Lagrangian has no parameter xi");
  }
  validate_domain(y, f.interval(), f.eps().max(), 1);
  const auto bps = f.breakpoints_for(y.breakpoints(), 1);
  return integrate(
      [&](double x) { return lag.partial(lag.param_slot(), arg_vector(f, y, x, xi), f.eps()); },
      f.interval(), f.quadrature(), bps);
}

ResidualReport el_residual(const Functional& f, const Curve& y, int grid_n,
                           const LadderConfig& ladder, std::optional<Complex> xi) {
  if (f.order() != 1) {
    throw Error(ErrorKind::invalid_argument, "el_residual needs an order-1 functional");
  }
  validate_domain(y, f.interval(), f.eps().max(), 2);
  return ladder_residual(f, f.interval(), grid_n, ladder, [&](const Functional& g, double x) {
    return order1_point(g, y, x, xi);
  });
}

ParamResidualReport el_residual_param(const Functional& f, const Curve& y, Complex xi, int grid_n,
                                      const LadderConfig& ladder) {
  if (!f.lagrangian().has_param()) {
    throw Error(ErrorKind::invalid_argument, "el_residual_param needs a Lagrangian with xi");
  }
  if (f.order() != 1 || f.lagrangian().n() != 1) {
    throw Error(ErrorKind::invalid_argument, "el_residual_param needs an order-1, n = 1 functional");
  }
  ParamResidualReport out;
  out.residual = el_residual(f, y, grid_n, ladder, xi);
  out.param_value = param_integral(f, y, xi);
  out.param_integral = bracket_param_integral(f, y, xi, ladder);
  out.verdict = combine(out.residual.verdict, *out.param_integral);
  return out;
}

ParamResidualReport el_residual_higher2(const Functional& f, const Curve& y,
                                        std::optional<Complex> xi, int grid_n,
                                        const LadderConfig& ladder, HigherOrderOptions options) {
  if (f.order() != 2) {
    throw Error(ErrorKind::invalid_argument, "el_residual_higher2 needs an order-2 functional");
  }
  if (y.derivative_order() < 1) {
    throw Error(ErrorKind::unsupported_order,
                "higher-order residual needs a curve with an analytic first derivative");
  }
  if (!(options.diff_step > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "diff_step must be positive");
  }
  validate_domain(y, f.interval(), f.eps().max() + options.diff_step, 2);

  const Lagrangian& lag = f.lagrangian();
  const Expr& d4 = lag.partial_expr(4);
  const bool analytic_possible = !contains_external(d4) && y.derivative_order() >= 2;
  bool analytic = false;
  switch (options.prime) {
    case PrimeMode::automatic: analytic = analytic_possible; break;
    case PrimeMode::finite_difference: analytic = false; break;
    case PrimeMode::analytic:
      if (!analytic_possible) {
        throw Error(ErrorKind::unsupported_order,
                    "analytic prime needs y'' and a partial free of external references");
      }
      analytic = true;
      break;
  }

  // Chain rule pieces for d/dt d_4L(u(t)).
  Expr d4_x, d4_y, d4_v1, d4_v2;
  FunctionHandle y1, y2;
  if (analytic) {
    d4_x = diff_expr(d4, Variable::x());
    d4_y = diff_expr(d4, Variable::y());
    d4_v1 = diff_expr(d4, Variable::v(1));
    d4_v2 = diff_expr(d4, Variable::v(2));
    y1 = y.derivative(1);
    y2 = y.derivative(2);
  }

  auto point = [&](const Functional& g, double x) {
    const EpsilonVector& eps = g.eps();
    const Epsilon e = eps[0];
    auto partial_at = [&](int slot) {
      return [&, slot](double t) { return lag.partial(slot, arg_vector(g, y, t, xi), eps); };
    };
    Complex r = lag.partial(2, arg_vector(g, y, x, xi), eps) - box(partial_at(3), x, e);
    if (analytic) {
      const auto& table = lag.bindings();
      auto d4_prime = [&](double t) {
        const ArgVector u = arg_vector(g, y, t, xi);
        return eval_expr(d4_x, u, eps, table) + eval_expr(d4_y, u, eps, table) * y1(t) +
               eval_expr(d4_v1, u, eps, table) * box(y1, t, e) +
               eval_expr(d4_v2, u, eps, table) * box(y2, t, e);
      };
      // (box G)' = box(G') since box is a combination of shifts.
      r += box(d4_prime, x, e);
    } else {
      const auto d4_handle = partial_at(4);
      r += classical_diff([&](double s) { return box(d4_handle, s, e); }, x, options.diff_step);
    }
    return r;
  };

  ParamResidualReport out;
  out.residual = ladder_residual(f, f.interval(), grid_n, ladder, point);
  if (lag.has_param()) {
    if (!xi) throw Error(ErrorKind::invalid_argument, "functional depends on xi but none was supplied");
    out.param_value = param_integral(f, y, *xi);
    out.param_integral = bracket_param_integral(f, y, *xi, ladder);
    out.verdict = combine(out.residual.verdict, *out.param_integral);
  } else {
    out.verdict = out.residual.verdict;
  }
  return out;
}

}  // namespace scalevar
