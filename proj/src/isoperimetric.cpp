#include <cmath>
#include <sstream>

#include "scalevar/error.hpp"
#include "scalevar/residual.hpp"

namespace scalevar {

MultiplierResult isoperimetric_multiplier(const Functional& phi, const Functional& psi,
                                          const Curve& y, int grid_n,
                                          const LadderConfig& ladder) {
  if (phi.interval().lo != psi.interval().lo || phi.interval().hi != psi.interval().hi) {
    throw Error(ErrorKind::invalid_argument, "objective and constraint must share the interval");
  }
  if (phi.eps().size() != psi.eps().size()) {
    throw Error(ErrorKind::invalid_argument, "objective and constraint must share epsilons");
  }
  for (std::size_t k = 0; k < phi.eps().size(); ++k) {
    if (!(phi.eps()[k] == psi.eps()[k]))
      throw Error(ErrorKind::invalid_argument, "objective and constraint must share epsilons");
  }

  const ResidualReport rl = el_residual(phi, y, grid_n, ladder);
  const ResidualReport rg = el_residual(psi, y, grid_n, ladder);
  if (rg.verdict == ExtremalVerdict::extremal) {
    throw Error(ErrorKind::condition_violation,
                "the curve is an extremal of the constraint functional; no multiplier exists");
  }
  const Eigen::VectorXcd limit_l = rl.limits();
  const Eigen::VectorXcd limit_g = rg.limits();

  MultiplierResult out;
  out.grid = rl.grid;
  out.psi_residual_sup = limit_g.cwiseAbs().maxCoeff();
  // Complex least squares: lambda = <R_g, R_L> / <R_g, R_g>.
  out.lambda = limit_g.dot(limit_l) / limit_g.squaredNorm();
  out.k_residual = limit_l - out.lambda * limit_g;
  out.k_residual_sup = out.k_residual.cwiseAbs().maxCoeff();
  return out;
}

Complex solve_param(const Functional& f, const Curve& y, Complex xi0, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "solve_param tolerance must be positive");
  constexpr int kMaxIterations = 50;
  std::ostringstream trace;
  trace.precision(17);

  auto g = [&](Complex xi) { return param_integral(f, y, xi); };
  Complex x0 = xi0;
  Complex g0 = g(x0);
  trace << "xi=" << x0 << " G=" << g0 << "; ";
  if (std::abs(g0) <= tol) return x0;
  Complex x1 = xi0 + 1e-3 * (1.0 + std::abs(xi0));
  Complex g1 = g(x1);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    trace << "xi=" << x1 << " G=" << g1 << "; ";
    if (std::abs(g1) <= tol) return x1;
    const Complex slope = g1 - g0;
    if (slope == Complex(0.0) || !std::isfinite(std::abs(slope))) {
      throw Error(ErrorKind::nonconvergence,
                  "secant step undefined (flat G); trace: " + trace.str());
    }
    const Complex x2 = x1 - g1 * (x1 - x0) / slope;
    x0 = x1;
    g0 = g1;
    x1 = x2;
    g1 = g(x1);
  }
  throw Error(ErrorKind::nonconvergence,
              "no root of the parameter integral within 50 iterations; trace: " + trace.str());
}

}  // namespace scalevar
