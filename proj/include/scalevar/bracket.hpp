#ifndef SCALEVAR_BRACKET_HPP
#define SCALEVAR_BRACKET_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalevar/epsilon.hpp"
#include "scalevar/function_handle.hpp"

namespace scalevar {

/// Geometric ladder eps_j = eps0 * ratio^j, j = 0..count-1, used to realise
/// the eps -> 0 limit numerically.
struct LadderConfig {
  double eps0 = 0.1;
  double ratio = 0.5;
  int count = 8;
  double zero_tol = 1e-8;
  double divergence_factor = 10.0;

  void validate() const;
  std::vector<double> rungs() const;
};

enum class BracketVerdict { zero, nonzero, divergent };

std::string_view to_string(BracketVerdict v) noexcept;

/// Estimate of [a(eps)]_eps: a(eps) ~ limit + c * eps^exponent.
struct BracketResult {
  std::optional<Complex> limit;  // absent when divergent
  double exponent = 0.0;         // 0 when the samples are constant
  double residual = 0.0;         // max misfit of the fitted power law
  BracketVerdict verdict = BracketVerdict::nonzero;
  std::string diagnostic;
  std::vector<double> rungs;
  std::vector<Complex> samples;

  bool is_zero() const noexcept { return verdict == BracketVerdict::zero; }
};

using Sampler = std::function<Complex(Epsilon)>;

/// Samples a on the ladder and extrapolates to eps -> 0.
///
/// The decay order p is the slope of log|a_{j+1} - a_j| against log eps_j;
/// the limit is the one-step extrapolation (a_n - r a_{n-1}) / (1 - r),
/// r = ratio^p, from the two finest rungs. Differences below
/// zero_tol * (1 + max|a_j|) are treated as noise. Divergent when samples are
/// non-finite, grow by more than divergence_factor, or their differences do
/// not decay (p <= 0 or no consistent power law, e.g. oscillation).
BracketResult bracket(const Sampler& sampler, const LadderConfig& config = {});

/// Same estimator applied to precomputed samples on config.rungs().
BracketResult bracket_samples(std::vector<Complex> samples, const LadderConfig& config);

}  // namespace scalevar

#endif  // SCALEVAR_BRACKET_HPP
