#include "scalevar/functional.hpp"

#include <algorithm>
#include <cmath>

#include "scalevar/error.hpp"
#include "scalevar/operators.hpp"

namespace scalevar {

Functional::Functional(Lagrangian lagrangian, Interval interval, EpsilonVector eps,
                       QuadratureConfig quad, int order)
    : lagrangian_(std::move(lagrangian)),
      interval_(interval),
      eps_(std::move(eps)),
      quad_(std::move(quad)),
      order_(order) {
  if (!(interval_.lo < interval_.hi) || !std::isfinite(interval_.lo) ||
      !std::isfinite(interval_.hi)) {
    throw Error(ErrorKind::invalid_argument, "functional interval must be a finite [a, b], a < b");
  }
  if (order_ != 1 && order_ != 2) {
    throw Error(ErrorKind::invalid_argument, "functional order must be 1 or 2");
  }
  if (order_ == 2 && (lagrangian_.n() != 2 || eps_.size() != 1)) {
    throw Error(ErrorKind::invalid_argument,
                "order-2 functionals need n = 2 slots and a single epsilon");
  }
  if (order_ == 1 && eps_.size() != static_cast<std::size_t>(lagrangian_.n())) {
    throw Error(ErrorKind::invalid_argument,
                "order-1 functionals need one epsilon per scale slot (n = " +
                    std::to_string(lagrangian_.n()) + ", got " + std::to_string(eps_.size()) + ")");
  }
  for (Epsilon e : eps_.values()) e.check_interval(interval_.lo, interval_.hi);
  quad_.validate();
}

Functional Functional::scaled(double factor) const { return with_eps(eps_.scaled(factor)); }

Functional Functional::with_eps(EpsilonVector eps) const {
  return Functional(lagrangian_, interval_, std::move(eps), quad_, order_);
}

std::vector<double> Functional::breakpoints_for(const std::vector<double>& curve_breakpoints,
                                                int nesting) const {
  std::vector<double> out;
  auto shift_all = [&](const std::vector<double>& base, int reach) {
    for (double p : base) {
      out.push_back(p);
      for (Epsilon e : eps_.values())
        for (int j = 1; j <= reach; ++j) {
          out.push_back(p - j * e.value());
          out.push_back(p + j * e.value());
        }
    }
  };
  shift_all(curve_breakpoints, nesting);
  shift_all(lagrangian_.binding_breakpoints(eps_), std::max(0, nesting - 1));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ArgVector arg_vector(const Functional& f, const Curve& y, double x, std::optional<Complex> xi) {
  ArgVector u;
  u.x = x;
  u.y = y(x);
  u.param = xi;
  if (f.lagrangian().has_param() && !xi) {
    throw Error(ErrorKind::invalid_argument, "functional depends on xi but none was supplied");
  }
  const auto& eps = f.eps();
  if (f.order() == 1) {
    u.v.reserve(eps.size());
    for (Epsilon e : eps.values()) u.v.push_back(box(y.handle(), x, e));
  } else {
    u.v = {box_k(y, x, eps[0], 1), box_k(y, x, eps[0], 2)};
  }
  return u;
}

namespace {

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

Complex evaluate_functional(const Functional& f, const Curve& y, std::optional<Complex> xi) {
  validate_domain(y, f.interval(), f.eps().max(), 1);
  const Lagrangian& lag = f.lagrangian();
  const auto bps = f.breakpoints_for(y.breakpoints(), 1);
  return integrate([&](double x) { return lag(arg_vector(f, y, x, xi), f.eps()); }, f.interval(),
                   f.quadrature(), bps);
}

Complex first_variation(const Functional& f, const Curve& y, const VariationCurve& h,
                        std::optional<Complex> xi) {
  if (f.order() != 1) {
    throw Error(ErrorKind::invalid_argument, "first_variation supports order-1 functionals only");
  }
  const double alpha = y.alpha();
  const double required = alpha < 1.0 ? min_beta(alpha) : 1.0;
  if (h.beta < required) {
    throw Error(ErrorKind::admissibility, "variation class beta = " + std::to_string(h.beta) +
                                              " below the required " + std::to_string(required));
  }
  validate_domain(y, f.interval(), f.eps().max(), 2);
  validate_domain(h.curve, f.interval(), f.eps().max(), 1);

  const Lagrangian& lag = f.lagrangian();
  const EpsilonVector& eps = f.eps();
  const int n = lag.n();
  const FunctionHandle& hh = h.curve.handle();

  auto slot_partial = [&](int k) {
    return [&, k](double t) { return lag.partial(k + 2, arg_vector(f, y, t, xi), eps); };
  };

  auto integrand = [&](double x) {
    const Complex hx = h(x);
    Complex el = lag.partial(2, arg_vector(f, y, x, xi), eps);
    Complex boundary = 0.0;
    Complex correction = 0.0;
    for (int k = 1; k <= n; ++k) {
      const Epsilon ek = eps[static_cast<std::size_t>(k - 1)];
      const auto p = slot_partial(k);
      el -= box(p, x, ek);
      boundary += box([&](double t) { return p(t) * hh(t); }, x, ek);
      correction += 0.5 * ek.value() * sigma_correction(p, hh, x, ek);
    }
    return el * hx + boundary - Complex(0.0, 1.0) * correction;
  };
  const auto bps = merged(f.breakpoints_for(y.breakpoints(), 2), f.breakpoints_for(h.curve.breakpoints(), 1));
  return integrate(integrand, f.interval(), f.quadrature(), bps);
}

}  // namespace scalevar
