#include "scalevar/quadrature.hpp"

#include <algorithm>

namespace scalevar {

void QuadratureConfig::validate() const {
  if (gauss_order < 2) throw Error(ErrorKind::invalid_argument, "gauss_order must be >= 2");
  if (!(panels >= 1.0)) throw Error(ErrorKind::invalid_argument, "panels must be >= 1");
}

std::vector<double> panel_edges(Interval interval, const QuadratureConfig& config,
                                std::span<const double> breakpoints) {
  config.validate();
  if (!(interval.lo <= interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw Error(ErrorKind::invalid_argument, "integration interval must be finite");
  }
  std::vector<double> cuts{interval.lo, interval.hi};
  auto take = [&](double x) {
    if (x > interval.lo && x < interval.hi) cuts.push_back(x);
  };
  for (double x : breakpoints) take(x);
  for (double x : config.forced_breakpoints) take(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> edges{cuts.front()};
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double len = cuts[s + 1] - cuts[s];
    if (!(len > 0.0)) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil(len * config.panels)));
    for (int k = 1; k < pieces; ++k) edges.push_back(cuts[s] + len * k / pieces);
    edges.push_back(cuts[s + 1]);
  }
  return edges;
}

}  // namespace scalevar
