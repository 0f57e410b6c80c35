#ifndef SCALEVAR_CURVE_HPP
#define SCALEVAR_CURVE_HPP

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scalevar/function_handle.hpp"

namespace scalevar {

/// Real-valued Hölder curve with a claimed exponent and optional analytic
/// derivatives. Corpus curves are defined on the whole real line.
class Curve {
 public:
  using RealFn = std::function<double(double)>;
  /// order -> derivative handle, valid for 1 <= order <= max_order.
  using DerivativeFn = std::function<FunctionHandle(int)>;

  static constexpr int kAllOrders = std::numeric_limits<int>::max();

  Curve() = default;
  Curve(RealFn fn, double alpha, Interval domain = Interval::everywhere(),
        std::vector<double> breakpoints = {}, DerivativeFn derivatives = {},
        int derivative_order = 0);

  double operator()(double x) const { return handle_(x).real(); }

  const FunctionHandle& handle() const noexcept { return handle_; }
  double alpha() const noexcept { return alpha_; }
  const Interval& domain() const noexcept { return handle_.domain(); }
  const std::vector<double>& breakpoints() const noexcept { return handle_.breakpoints(); }

  /// Highest analytic derivative order available (0 = none).
  int derivative_order() const noexcept { return derivative_order_; }
  /// order 0 is the curve itself; throws unsupported_order beyond derivative_order().
  FunctionHandle derivative(int order) const;

  Curve restricted(Interval domain) const;

  friend Curve operator+(const Curve& lhs, const Curve& rhs);
  friend Curve operator*(double scale, const Curve& curve);

 private:
  FunctionHandle handle_;
  double alpha_ = 1.0;
  std::shared_ptr<const DerivativeFn> derivatives_;
  int derivative_order_ = 0;
};

enum class CurveKind { abs, polynomial, sine, weierstrass, takagi };

CurveKind parse_curve_kind(std::string_view name);
std::string_view to_string(CurveKind kind) noexcept;

/// |x - center|, breakpoint at center, piecewise first derivative.
Curve abs_curve(double center = 0.0);
/// sum_k coefficients[k] x^k, all derivative orders.
Curve polynomial_curve(std::vector<double> coefficients);
/// amplitude * sin(frequency x + phase), all derivative orders.
Curve sine_curve(double amplitude = 1.0, double frequency = 1.0, double phase = 0.0);
/// sum_{k=0}^{terms} a^k cos(b^k pi x); 0 < a < 1, b odd >= 3, alpha = -ln a / ln b.
Curve weierstrass_curve(double a = 0.5, int b = 3, int terms = 25);
/// sum_{k=0}^{terms} w^k dist(2^k x, Z); 0 < w < 1, alpha = min(1, -log2 w).
Curve takagi_curve(double w = 0.5, int terms = 30);

/// Dispatch by kind with positional parameters (empty span = defaults):
///   abs: [center]; polynomial: coefficients; sine: [amplitude, frequency, phase];
///   weierstrass: [a, b, terms]; takagi: [w, terms].
Curve corpus_curve(CurveKind kind, std::span<const double> params = {});

enum class VariationKind { bump, sine_mode, poly_bump };

VariationKind parse_variation_kind(std::string_view name);
std::string_view to_string(VariationKind kind) noexcept;

/// Admissible variation h on [a, b]: h(a) = h(b) = 0 exactly, and for
/// order 2 also h'(a) = h'(b) = 0.
struct VariationCurve {
  Curve curve;
  Interval interval;
  double beta = 1.0;
  int order = 1;

  double operator()(double x) const { return curve(x); }
};

/// Variation generators (params, empty = defaults):
///   bump: [amplitude] -- amplitude * exp(1 - 1/(1 - s^2)), s in (-1, 1); peak = amplitude.
///   sine_mode: [k, amplitude] -- amplitude * sin(k pi s') (order 1) or its square (order 2).
///   poly_bump: [amplitude] -- amplitude (x-a)(b-x) (order 1) or amplitude (x-a)^2 (b-x)^2 (order 2).
VariationCurve make_variation(VariationKind kind, Interval interval, int order,
                              std::span<const double> params = {});

/// Smallest admissible Hölder class of variations: 1 - alpha below 1/2, alpha otherwise.
double min_beta(double alpha);

struct HolderEstimate {
  double alpha_hat = 0.0;
  std::vector<double> scales;
  std::vector<double> oscillations;
  double fit_r2 = 0.0;
  std::string note;
};

std::vector<double> default_holder_scales();

/// Slope of log(max-oscillation) against log(scale) over an equispaced grid.
/// A grid estimate, never a certificate.
HolderEstimate estimate_holder(const Curve& curve, Interval interval,
                               std::span<const double> scales = {}, int grid_n = 1001);

/// Throws insufficient_domain unless the curve's domain covers
/// [a - nesting * eps_max, b + nesting * eps_max].
void validate_domain(const Curve& curve, Interval interval, double eps_max, int nesting);

}  // namespace scalevar

#endif  // SCALEVAR_CURVE_HPP
