#include "scalevar/curve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "scalevar/error.hpp"

namespace scalevar {

namespace {

constexpr double kPi = std::numbers::pi;

FunctionHandle real_handle(Curve::RealFn fn, Interval domain = Interval::everywhere(),
                           std::vector<double> breakpoints = {}) {
  return FunctionHandle([fn = std::move(fn)](double x) { return Complex(fn(x), 0.0); }, domain,
                        std::move(breakpoints));
}

}  // namespace

Curve::Curve(RealFn fn, double alpha, Interval domain, std::vector<double> breakpoints,
             DerivativeFn derivatives, int derivative_order)
    : handle_(real_handle(std::move(fn), domain, std::move(breakpoints))),
      alpha_(alpha),
      derivative_order_(derivatives ? derivative_order : 0) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::invalid_argument, "Hölder exponent claim must lie in (0, 1]");
  }
  if (derivative_order_ < 0) {
    throw Error(ErrorKind::invalid_argument, "derivative order must be nonnegative");
  }
  if (derivatives) derivatives_ = std::make_shared<const DerivativeFn>(std::move(derivatives));
}

FunctionHandle Curve::derivative(int order) const {
  if (order == 0) return handle_;
  if (order < 0 || order > derivative_order_) {
    throw Error(ErrorKind::unsupported_order,
                "curve has no analytic derivative of order " + std::to_string(order));
  }
  return (*derivatives_)(order).restricted(domain());
}

Curve Curve::restricted(Interval domain) const {
  Curve out = *this;
  out.handle_ = handle_.restricted(domain);
  return out;
}

Curve operator+(const Curve& lhs, const Curve& rhs) {
  Curve out;
  out.handle_ = lhs.handle_ + rhs.handle_;
  out.alpha_ = std::min(lhs.alpha_, rhs.alpha_);
  out.derivative_order_ = std::min(lhs.derivative_order_, rhs.derivative_order_);
  if (out.derivative_order_ > 0) {
    out.derivatives_ = std::make_shared<const Curve::DerivativeFn>(
        [l = lhs.derivatives_, r = rhs.derivatives_](int k) { return (*l)(k) + (*r)(k); });
  }
  return out;
}

Curve operator*(double scale, const Curve& curve) {
  Curve out = curve;
  out.handle_ = Complex(scale) * curve.handle_;
  if (out.derivative_order_ > 0) {
    out.derivatives_ = std::make_shared<const Curve::DerivativeFn>(
        [d = curve.derivatives_, scale](int k) { return Complex(scale) * (*d)(k); });
  }
  return out;
}

CurveKind parse_curve_kind(std::string_view name) {
  if (name == "abs") return CurveKind::abs;
  if (name == "polynomial") return CurveKind::polynomial;
  if (name == "sine") return CurveKind::sine;
  if (name == "weierstrass") return CurveKind::weierstrass;
  if (name == "takagi") return CurveKind::takagi;
  throw Error(ErrorKind::invalid_argument, "unknown curve kind '" + std::string(name) + "'");
}

std::string_view to_string(CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::abs: return "abs";
    case CurveKind::polynomial: return "polynomial";
    case CurveKind::sine: return "sine";
    case CurveKind::weierstrass: return "weierstrass";
    case CurveKind::takagi: return "takagi";
  }
  return "unknown";
}

Curve abs_curve(double center) {
  // Only order 1 exists; sign(0) is taken as 0.
  auto sign = [center](int) {
    return real_handle(
        [center](double x) { return x > center ? 1.0 : (x < center ? -1.0 : 0.0); },
        Interval::everywhere(), {center});
  };
  return Curve([center](double x) { return std::abs(x - center); }, 1.0,
               Interval::everywhere(), {center}, sign, 1);
}

Curve polynomial_curve(std::vector<double> coefficients) {
  for (double c : coefficients) {
    if (!std::isfinite(c))
      throw Error(ErrorKind::invalid_argument, "polynomial coefficients must be finite");
  }
  if (coefficients.empty()) coefficients.push_back(0.0);
  auto horner = [](const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  auto derivative = [coefficients, horner](int order) {
    std::vector<double> c = coefficients;
    for (int k = 0; k < order && !c.empty(); ++k) {
      std::vector<double> next;
      for (std::size_t j = 1; j < c.size(); ++j) next.push_back(static_cast<double>(j) * c[j]);
      c = std::move(next);
    }
    return real_handle([c, horner](double x) { return horner(c, x); });
  };
  return Curve([coefficients, horner](double x) { return horner(coefficients, x); }, 1.0,
               Interval::everywhere(), {}, derivative, Curve::kAllOrders);
}

Curve sine_curve(double amplitude, double frequency, double phase) {
  if (!std::isfinite(amplitude) || !std::isfinite(frequency) || !std::isfinite(phase)) {
    throw Error(ErrorKind::invalid_argument, "sine parameters must be finite");
  }
  auto derivative = [=](int order) {
    // d^k/dx^k sin(w x + p) = w^k sin(w x + p + k pi/2)
    const double scale = amplitude * std::pow(frequency, order);
    const double shift = phase + order * 0.5 * kPi;
    return real_handle([=](double x) { return scale * std::sin(frequency * x + shift); });
  };
  return Curve([=](double x) { return amplitude * std::sin(frequency * x + phase); }, 1.0,
               Interval::everywhere(), {}, derivative, Curve::kAllOrders);
}

Curve weierstrass_curve(double a, int b, int terms) {
  if (!(a > 0.0 && a < 1.0))
    throw Error(ErrorKind::invalid_argument, "weierstrass amplitude ratio a must lie in (0, 1)");
  if (b < 3 || b % 2 == 0)
    throw Error(ErrorKind::invalid_argument, "weierstrass frequency b must be an odd integer >= 3");
  if (terms < 0) throw Error(ErrorKind::invalid_argument, "weierstrass terms must be >= 0");
  const double alpha = std::min(1.0, -std::log(a) / std::log(static_cast<double>(b)));
  return Curve(
      [a, b, terms](double x) {
        double sum = 0.0;
        double amp = 1.0;
        double freq = kPi;
        for (int k = 0; k <= terms; ++k) {
          sum += amp * std::cos(freq * x);
          amp *= a;
          freq *= b;
        }
        return sum;
      },
      alpha);
}

Curve takagi_curve(double w, int terms) {
  if (!(w > 0.0 && w < 1.0))
    throw Error(ErrorKind::invalid_argument, "takagi weight w must lie in (0, 1)");
  if (terms < 0) throw Error(ErrorKind::invalid_argument, "takagi terms must be >= 0");
  const double alpha = w <= 0.5 ? 1.0 : -std::log2(w);
  // Kinks at every dyadic rational of level <= terms; not listed.
  return Curve(
      [w, terms](double x) {
        double sum = 0.0;
        double amp = 1.0;
        double freq = 1.0;
        for (int k = 0; k <= terms; ++k) {
          const double t = freq * x;
          sum += amp * std::abs(t - std::nearbyint(t));
          amp *= w;
          freq *= 2.0;
        }
        return sum;
      },
      alpha);
}

Curve corpus_curve(CurveKind kind, std::span<const double> params) {
  auto param = [&](std::size_t i, double fallback) {
    return i < params.size() ? params[i] : fallback;
  };
  auto integer = [&](std::size_t i, int fallback) {
    const double v = param(i, fallback);
    if (v != std::floor(v))
      throw Error(ErrorKind::invalid_argument, "expected an integer curve parameter");
    return static_cast<int>(v);
  };
  switch (kind) {
    case CurveKind::abs: return abs_curve(param(0, 0.0));
    case CurveKind::polynomial:
      return polynomial_curve(std::vector<double>(params.begin(), params.end()));
    case CurveKind::sine: return sine_curve(param(0, 1.0), param(1, 1.0), param(2, 0.0));
    case CurveKind::weierstrass:
      return weierstrass_curve(param(0, 0.5), integer(1, 3), integer(2, 25));
    case CurveKind::takagi: return takagi_curve(param(0, 0.5), integer(1, 30));
  }
  throw Error(ErrorKind::invalid_argument, "unknown curve kind");
}

VariationKind parse_variation_kind(std::string_view name) {
  if (name == "bump") return VariationKind::bump;
  if (name == "sine_mode") return VariationKind::sine_mode;
  if (name == "poly_bump") return VariationKind::poly_bump;
  throw Error(ErrorKind::invalid_argument, "unknown variation kind '" + std::string(name) + "'");
}

std::string_view to_string(VariationKind kind) noexcept {
  switch (kind) {
    case VariationKind::bump: return "bump";
    case VariationKind::sine_mode: return "sine_mode";
    case VariationKind::poly_bump: return "poly_bump";
  }
  return "unknown";
}

namespace {

// amplitude * exp(1 - 1/(1 - s^2)) with s = (2x - a - b)/(b - a); C-infinity,
// every derivative vanishes at s = +-1.
Curve bump_variation(double a, double b, double amplitude) {
  const double width = b - a;
  auto s_of = [a, b, width](double x) { return (2.0 * x - a - b) / width; };
  auto value = [=](double x) {
    const double s = s_of(x);
    if (std::abs(s) >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
  };
  auto derivative = [=](int order) {
    return real_handle([=](double x) {
      const double s = s_of(x);
      if (std::abs(s) >= 1.0) return 0.0;
      const double q = 1.0 - s * s;
      const double h = amplitude * std::exp(1.0 - 1.0 / q);
      const double g1 = -2.0 * s / (q * q);
      const double ds = 2.0 / width;
      if (order == 1) return h * g1 * ds;
      const double g2 = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
      return h * (g1 * g1 + g2) * ds * ds;
    });
  };
  return Curve(value, 1.0, Interval::everywhere(), {}, derivative, 2);
}

Curve sine_mode_variation(double a, double b, int order, double k, double amplitude) {
  const double width = b - a;
  const double omega = k * kPi / width;
  // Endpoints are pinned so that h(a) = h(b) = 0 holds exactly.
  auto at_end = [a, b](double x) { return x == a || x == b; };
  if (order == 1) {
    auto derivative = [=](int n) {
      const double scale = amplitude * std::pow(omega, n);
      return real_handle(
          [=](double x) { return scale * std::sin(omega * (x - a) + n * 0.5 * kPi); });
    };
    return Curve(
        [=](double x) { return at_end(x) ? 0.0 : amplitude * std::sin(omega * (x - a)); }, 1.0,
        Interval::everywhere(), {}, derivative, Curve::kAllOrders);
  }
  // amplitude sin^2 = amplitude (1 - cos(2 omega (x - a))) / 2
  auto derivative = [=](int n) {
    const double scale = -0.5 * amplitude * std::pow(2.0 * omega, n);
    return real_handle(
        [=](double x) { return scale * std::cos(2.0 * omega * (x - a) + n * 0.5 * kPi); });
  };
  return Curve(
      [=](double x) {
        if (at_end(x)) return 0.0;
        const double s = std::sin(omega * (x - a));
        return amplitude * s * s;
      },
      1.0, Interval::everywhere(), {}, derivative, Curve::kAllOrders);
}

Curve poly_bump_variation(double a, double b, int order, double amplitude) {
  // amplitude * ((x - a)(b - x))^order, expanded as a polynomial for derivatives.
  const double lin[3] = {-a * b, a + b, -1.0};  // (x - a)(b - x)
  std::vector<double> coeffs(lin, lin + 3);
  if (order == 2) {
    std::vector<double> sq(5, 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sq[static_cast<std::size_t>(i + j)] += lin[i] * lin[j];
    coeffs = sq;
  }
  for (double& c : coeffs) c *= amplitude;
  const Curve poly = polynomial_curve(coeffs);
  // Factored evaluation keeps the endpoint zeros exact.
  return Curve(
      [=](double x) {
        const double base = (x - a) * (b - x);
        return amplitude * (order == 2 ? base * base : base);
      },
      1.0, Interval::everywhere(), {}, [poly](int n) { return poly.derivative(n); },
      Curve::kAllOrders);
}

}  // namespace

VariationCurve make_variation(VariationKind kind, Interval interval, int order,
                              std::span<const double> params) {
  if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw Error(ErrorKind::invalid_argument, "variation interval must be a nonempty finite [a, b]");
  }
  if (order != 1 && order != 2) {
    throw Error(ErrorKind::invalid_argument, "variation order must be 1 or 2");
  }
  auto param = [&](std::size_t i, double fallback) {
    return i < params.size() ? params[i] : fallback;
  };
  const double a = interval.lo;
  const double b = interval.hi;
  VariationCurve out;
  out.interval = interval;
  out.order = order;
  out.beta = 1.0;
  switch (kind) {
    case VariationKind::bump: out.curve = bump_variation(a, b, param(0, 1.0)); break;
    case VariationKind::sine_mode: {
      const double k = param(0, 1.0);
      if (k < 1.0 || k != std::floor(k))
        throw Error(ErrorKind::invalid_argument, "sine_mode index k must be a positive integer");
      out.curve = sine_mode_variation(a, b, order, k, param(1, 1.0));
      break;
    }
    case VariationKind::poly_bump:
      out.curve = poly_bump_variation(a, b, order, param(0, 1.0));
      break;
  }
  return out;
}

double min_beta(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::invalid_argument, "min_beta requires alpha in (0, 1)");
  }
  return alpha < 0.5 ? 1.0 - alpha : alpha;
}

std::vector<double> default_holder_scales() {
  std::vector<double> scales(10);
  for (std::size_t i = 0; i < scales.size(); ++i)
    scales[i] = std::pow(10.0, -1.0 - 3.0 * static_cast<double>(i) / 9.0);
  return scales;
}

HolderEstimate estimate_holder(const Curve& curve, Interval interval,
                               std::span<const double> scales, int grid_n) {
  std::vector<double> probe(scales.begin(), scales.end());
  if (probe.empty()) probe = default_holder_scales();
  if (probe.size() < 3) {
    throw Error(ErrorKind::insufficient_data, "Hölder estimation needs at least 3 scales");
  }
  if (grid_n < 2) throw Error(ErrorKind::invalid_argument, "grid_n must be at least 2");
  for (std::size_t i = 0; i < probe.size(); ++i) {
    if (!(probe[i] > 0.0))
      throw Error(ErrorKind::invalid_argument, "Hölder scales must be positive");
    if (i > 0 && !(probe[i] < probe[i - 1]))
      throw Error(ErrorKind::invalid_argument, "Hölder scales must be decreasing");
  }
  if (!(probe.front() < interval.length())) {
    throw Error(ErrorKind::invalid_argument, "largest Hölder scale must be below the interval length");
  }
  if (!curve.domain().contains(interval)) {
    throw Error(ErrorKind::insufficient_domain, "curve domain does not cover the probe interval");
  }

  HolderEstimate out;
  out.scales = probe;
  const auto m = static_cast<Eigen::Index>(probe.size());
  Eigen::VectorXd log_scale(m);
  Eigen::VectorXd log_osc(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double delta = probe[static_cast<std::size_t>(i)];
    // Probes stay inside [a, b]: x in [a, b - delta].
    const double span = interval.length() - delta;
    double osc = 0.0;
    for (int j = 0; j < grid_n; ++j) {
      const double x = interval.lo + span * j / (grid_n - 1);
      osc = std::max(osc, std::abs(curve(x + delta) - curve(x)));
    }
    out.oscillations.push_back(osc);
    if (osc == 0.0) {
      out.alpha_hat = 1.0;
      out.fit_r2 = 1.0;
      out.note = "zero oscillation at some scale; curve is locally constant";
      return out;
    }
    log_scale(i) = std::log(delta);
    log_osc(i) = std::log(osc);
  }

  Eigen::MatrixXd design(m, 2);
  design.col(0).setOnes();
  design.col(1) = log_scale;
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(log_osc);
  const Eigen::VectorXd fitted = design * coef;
  const double ss_res = (log_osc - fitted).squaredNorm();
  const double ss_tot = (log_osc.array() - log_osc.mean()).matrix().squaredNorm();
  out.fit_r2 = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;

  const double slope = coef(1);
  if (!(slope > 0.0)) {
    throw Error(ErrorKind::insufficient_data, "oscillation does not decay with scale");
  }
  out.alpha_hat = slope;
  if (slope > 1.2) {
    out.alpha_hat = 1.2;
    out.note = "slope above 1.2 clamped; curve is smooth at the probed scales";
  } else if (slope > 1.0) {
    out.note = "slope above 1: curve is smooth at the probed scales";
  }
  return out;
}

void validate_domain(const Curve& curve, Interval interval, double eps_max, int nesting) {
  if (nesting < 0) throw Error(ErrorKind::invalid_argument, "nesting must be nonnegative");
  const double pad = nesting * eps_max;
  const Interval needed{interval.lo - pad, interval.hi + pad};
  if (!curve.domain().contains(needed)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "curve domain [" << curve.domain().lo << ", " << curve.domain().hi
        << "] does not cover [" << needed.lo << ", " << needed.hi << "] (nesting " << nesting
        << ", eps_max " << eps_max << ")";
    throw Error(ErrorKind::insufficient_domain, msg.str());
  }
}

}  // namespace scalevar
