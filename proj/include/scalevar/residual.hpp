#ifndef SCALEVAR_RESIDUAL_HPP
#define SCALEVAR_RESIDUAL_HPP

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <vector>

#include "scalevar/bracket.hpp"
#include "scalevar/functional.hpp"
#include "scalevar/operators.hpp"

namespace scalevar {

enum class ExtremalVerdict { extremal, not_extremal, inconclusive };

std::string_view to_string(ExtremalVerdict v) noexcept;

inline constexpr int kDefaultResidualGrid = 201;

/// grid_n equispaced interior points of (a, b), endpoints excluded.
Eigen::VectorXd residual_grid(Interval interval, int grid_n);

struct ResidualReport {
  Eigen::VectorXd grid;
  Eigen::VectorXcd values;  // at the functional's own epsilons
  double sup_norm = 0.0;
  std::vector<BracketResult> bracketed;
  ExtremalVerdict verdict = ExtremalVerdict::inconclusive;

  /// Bracketed limits; throws condition_violation if any point diverged.
  Eigen::VectorXcd limits() const;
};

/// Residual report plus the bracketed parameter-stationarity integral.
struct ParamResidualReport {
  ResidualReport residual;
  std::optional<BracketResult> param_integral;
  std::optional<Complex> param_value;  // at the functional's own epsilons
  ExtremalVerdict verdict = ExtremalVerdict::inconclusive;
};

/// d_2 L(u) - sum_k box_{eps_k}(d_{k+2} L(u)) on the grid. The ladder scales
/// all epsilons together starting from the functional's own values
/// (eps_k(j) = eps_k * ratio^j); config.eps0 is not used here.
ResidualReport el_residual(const Functional& f, const Curve& y,
                           int grid_n = kDefaultResidualGrid, const LadderConfig& ladder = {},
                           std::optional<Complex> xi = std::nullopt);

/// Order 1, n = 1 functional with parameter: the residual at fixed xi and
/// the bracket of eps -> int_a^b d_xi L(u) dx.
ParamResidualReport el_residual_param(const Functional& f, const Curve& y, Complex xi,
                                      int grid_n = kDefaultResidualGrid,
                                      const LadderConfig& ladder = {});

/// How the outer classical derivative of box^1(d_4 L) is taken.
enum class PrimeMode {
  automatic,          // analytic when possible, else finite difference
  analytic,           // chain rule through the symbolic partials; needs y''
  finite_difference,  // classical_diff of the composite handle
};

struct HigherOrderOptions {
  double diff_step = kDefaultDiffStep;
  PrimeMode prime = PrimeMode::automatic;
};

/// Order 2 residual d_2 L - box^1(d_3 L) + (box^1(d_4 L))' and, when the
/// Lagrangian has a parameter, the bracketed int_a^b d_5 L(u) dx.
ParamResidualReport el_residual_higher2(const Functional& f, const Curve& y,
                                        std::optional<Complex> xi = std::nullopt,
                                        int grid_n = kDefaultResidualGrid,
                                        const LadderConfig& ladder = {},
                                        HigherOrderOptions options = {});

/// int_a^b d_xi L(u) dx at the functional's epsilons.
Complex param_integral(const Functional& f, const Curve& y, Complex xi);

struct MultiplierResult {
  Complex lambda{};
  double k_residual_sup = 0.0;
  double psi_residual_sup = 0.0;
  Eigen::VectorXd grid;
  Eigen::VectorXcd k_residual;
};

/// lambda minimising sum_grid |R_L - lambda R_g|^2 over the bracketed
/// residual limits of Phi (L) and Psi (g). Throws condition_violation when y
/// is an extremal of Psi or a residual bracket diverges.
MultiplierResult isoperimetric_multiplier(const Functional& phi, const Functional& psi,
                                          const Curve& y, int grid_n = kDefaultResidualGrid,
                                          const LadderConfig& ladder = {});

/// Secant iteration on G(xi) = int_a^b d_xi L(u) dx from xi0 until |G| <= tol.
/// Throws nonconvergence after 50 iterations or on a flat secant.
Complex solve_param(const Functional& f, const Curve& y, Complex xi0, double tol = 1e-12);

}  // namespace scalevar

#endif  // SCALEVAR_RESIDUAL_HPP
