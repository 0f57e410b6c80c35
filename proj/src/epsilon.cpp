#include "scalevar/epsilon.hpp"

#include <sstream>

namespace scalevar {

void Epsilon::check_interval(double a, double b) const {
  if (!(value_ < 0.5 * (b - a))) {
    std::ostringstream msg;
    msg << "epsilon " << value_ << " must be smaller than half the interval [" << a << ", "
        << b << "]";
    throw Error(ErrorKind::invalid_argument, msg.str());
  }
}

EpsilonVector::EpsilonVector(std::vector<Epsilon> eps) : eps_(std::move(eps)) {
  if (eps_.empty()) {
    throw Error(ErrorKind::invalid_argument, "epsilon vector must be nonempty");
  }
  const auto [lo, hi] = std::minmax_element(
      eps_.begin(), eps_.end(), [](Epsilon l, Epsilon r) { return l.value() < r.value(); });
  min_ = lo->value();
  max_ = hi->value();
}

static std::vector<Epsilon> to_eps(std::span<const double> values) {
  std::vector<Epsilon> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

EpsilonVector::EpsilonVector(std::initializer_list<double> values)
    : EpsilonVector(to_eps(std::span<const double>(values.begin(), values.size()))) {}

EpsilonVector::EpsilonVector(std::span<const double> values) : EpsilonVector(to_eps(values)) {}

EpsilonVector EpsilonVector::scaled(double factor) const {
  std::vector<Epsilon> out;
  out.reserve(eps_.size());
  for (Epsilon e : eps_) out.emplace_back(e.value() * factor);
  return EpsilonVector(std::move(out));
}

}  // namespace scalevar
