#ifndef SCALEVAR_EPSILON_HPP
#define SCALEVAR_EPSILON_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "scalevar/error.hpp"

namespace scalevar {

/// Positive scale parameter of the quantum and scale derivatives.
class Epsilon {
 public:
  explicit Epsilon(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorKind::invalid_argument,
                  "epsilon must be a positive finite number, got " + std::to_string(value));
    }
  }

  double value() const noexcept { return value_; }

  /// Throws unless value < (b - a) / 2.
  void check_interval(double a, double b) const;

  friend bool operator==(Epsilon, Epsilon) = default;

 private:
  double value_;
};

/// Ordered scales eps_1..eps_n for Lagrangians with several scale-derivative slots.
class EpsilonVector {
 public:
  explicit EpsilonVector(std::vector<Epsilon> eps);
  EpsilonVector(std::initializer_list<double> values);
  explicit EpsilonVector(std::span<const double> values);

  std::size_t size() const noexcept { return eps_.size(); }
  Epsilon operator[](std::size_t k) const { return eps_[k]; }
  const std::vector<Epsilon>& values() const noexcept { return eps_; }

  double max() const noexcept { return max_; }
  double min() const noexcept { return min_; }

  /// Every entry multiplied by factor (> 0); used for proportional ladders.
  EpsilonVector scaled(double factor) const;

 private:
  std::vector<Epsilon> eps_;
  double max_ = 0.0;
  double min_ = 0.0;
};

}  // namespace scalevar

#endif  // SCALEVAR_EPSILON_HPP
