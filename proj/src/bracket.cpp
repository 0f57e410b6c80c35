#include "scalevar/bracket.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace scalevar {

std::string_view to_string(BracketVerdict v) noexcept {
  switch (v) {
    case BracketVerdict::zero: return "zero";
    case BracketVerdict::nonzero: return "nonzero";
    case BracketVerdict::divergent: return "divergent";
  }
  return "unknown";
}

void LadderConfig::validate() const {
  if (!(eps0 > 0.0)) throw Error(ErrorKind::invalid_argument, "ladder eps0 must be positive");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw Error(ErrorKind::invalid_argument, "ladder ratio must lie in (0, 1)");
  if (count < 3) throw Error(ErrorKind::invalid_argument, "ladder count must be at least 3");
  if (!(zero_tol >= 0.0))
    throw Error(ErrorKind::invalid_argument, "ladder zero_tol must be nonnegative");
  if (!(divergence_factor > 1.0))
    throw Error(ErrorKind::invalid_argument, "ladder divergence_factor must exceed 1");
}

std::vector<double> LadderConfig::rungs() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  double e = eps0;
  for (auto& r : out) {
    r = e;
    e *= ratio;
  }
  return out;
}

BracketResult bracket(const Sampler& sampler, const LadderConfig& config) {
  config.validate();
  std::vector<Complex> samples;
  samples.reserve(static_cast<std::size_t>(config.count));
  for (double e : config.rungs()) samples.push_back(sampler(Epsilon(e)));
  return bracket_samples(std::move(samples), config);
}

BracketResult bracket_samples(std::vector<Complex> samples, const LadderConfig& config) {
  config.validate();
  BracketResult out;
  out.rungs = config.rungs();
  if (samples.size() != out.rungs.size()) {
    throw Error(ErrorKind::invalid_argument, "bracket sample count does not match ladder");
  }
  out.samples = std::move(samples);
  const auto& a = out.samples;
  const auto& eps = out.rungs;
  const std::size_t n = a.size();

  auto divergent = [&out](std::string why) {
    out.verdict = BracketVerdict::divergent;
    out.limit.reset();
    out.diagnostic = std::move(why);
    return out;
  };

  double scale = 0.0;
  for (const Complex& v : a) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      return divergent("non-finite sample on the ladder");
    scale = std::max(scale, std::abs(v));
  }
  const double tol = config.zero_tol * (1.0 + scale);

  if (scale <= config.zero_tol) {
    out.limit = a.back();
    out.verdict = BracketVerdict::zero;
    out.diagnostic = "all samples below zero tolerance";
    return out;
  }
  if (std::abs(a.back()) > config.divergence_factor * std::max(std::abs(a.front()), config.zero_tol))
    return divergent("samples grow by more than the divergence factor");

  // Successive differences above the noise floor carry the decay order.
  std::vector<double> log_eps;
  std::vector<double> log_diff;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double d = std::abs(a[j + 1] - a[j]);
    if (d > tol) {
      log_eps.push_back(std::log(eps[j]));
      log_diff.push_back(std::log(d));
    }
  }
  const bool finest_is_noise = std::abs(a[n - 1] - a[n - 2]) <= tol;

  if (log_eps.size() < 2) {
    // Constant up to noise: the fit degenerates.
    out.limit = a.back();
    out.exponent = 0.0;
    double misfit = 0.0;
    for (const Complex& v : a) misfit = std::max(misfit, std::abs(v - a.back()));
    out.residual = misfit;
    out.diagnostic = "samples constant to tolerance";
  } else {
    const auto m = static_cast<Eigen::Index>(log_eps.size());
    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      design(i, 0) = 1.0;
      design(i, 1) = log_eps[static_cast<std::size_t>(i)];
      rhs(i) = log_diff[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
    const double p = coef(1);
    if (!(p > 0.0)) return divergent("ladder differences do not decay (fitted order <= 0)");
    out.exponent = p;

    Complex limit = a[n - 1];
    if (!finest_is_noise) {
      const double r = std::pow(config.ratio, p);
      limit = (a[n - 1] - r * a[n - 2]) / (1.0 - r);
    }
    out.limit = limit;

    // Amplitude of the correction term by least squares, then misfit.
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = std::pow(eps[j], p);
      num += (a[j] - limit) * w;
      den += w * w;
    }
    const Complex c = num / den;
    double misfit = 0.0;
    double spread = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      misfit = std::max(misfit, std::abs(a[j] - limit - c * std::pow(eps[j], p)));
      spread = std::max(spread, std::abs(a[j] - limit));
    }
    out.residual = misfit;
    if (misfit > tol && misfit > 0.25 * spread)
      return divergent("no consistent power-law decay (oscillatory or mixed regimes)");
  }

  out.verdict = std::abs(*out.limit) <= tol ? BracketVerdict::zero : BracketVerdict::nonzero;
  return out;
}

}  // namespace scalevar
