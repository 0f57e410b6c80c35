#ifndef SCALEVAR_QUADRATURE_HPP
#define SCALEVAR_QUADRATURE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "scalevar/error.hpp"
#include "scalevar/function_handle.hpp"

namespace scalevar {

template <typename Scalar>
struct GaussLegendreRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;    // on [-1, 1], ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// n-point Gauss-Legendre rule: Golub-Welsch eigenvalues of the Jacobi matrix,
/// then Newton-polished on P_n with weights 2 / ((1 - x^2) P_n'(x)^2).
template <typename Scalar = double>
GaussLegendreRule<Scalar> gauss_legendre(int n) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (n < 1) throw Error(ErrorKind::invalid_argument, "Gauss-Legendre order must be >= 1");

  Mat jacobi = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    const Scalar off = kk / std::sqrt(Scalar(4) * kk * kk - Scalar(1));
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(jacobi);
  GaussLegendreRule<Scalar> rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = Vec(n);

  for (int i = 0; i < n; ++i) {
    Scalar x = rule.nodes(i);
    Scalar dp = 0;
    for (int iter = 0; iter < 3; ++iter) {
      // Three-term recurrence for P_n(x) and P_n'(x).
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const Scalar pn = n == 1 ? x : p1;
      const Scalar pnm1 = n == 1 ? Scalar(1) : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1);
      x -= pn / dp;
    }
    rule.nodes(i) = x;
    rule.weights(i) = Scalar(2) / ((1 - x * x) * dp * dp);
  }
  return rule;
}

struct QuadratureConfig {
  int gauss_order = 16;
  double panels = 8.0;  // minimum panels per unit length
  std::vector<double> forced_breakpoints;

  void validate() const;
};

/// Panel edges over the interval: split at every breakpoint inside it, then
/// each segment into ceil(length * panels) equal panels. Zero-width segments
/// are dropped.
std::vector<double> panel_edges(Interval interval, const QuadratureConfig& config,
                                std::span<const double> breakpoints);

/// Composite Gauss-Legendre integral of a complex-valued callable.
template <class F>
Complex integrate(const F& f, Interval interval, const QuadratureConfig& config,
                  std::span<const double> breakpoints = {}) {
  const auto rule = gauss_legendre<double>(config.gauss_order);
  const std::vector<double> edges = panel_edges(interval, config, breakpoints);
  Complex total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = 0.5 * (edges[p + 1] + edges[p]);
    Complex panel = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights(i) * Complex(f(mid + half * rule.nodes(i)));
    }
    total += half * panel;
  }
  return total;
}

}  // namespace scalevar

#endif  // SCALEVAR_QUADRATURE_HPP
