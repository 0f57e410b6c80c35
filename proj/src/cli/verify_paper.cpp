#include <cmath>
#include <functional>

#include "scalevar/cli/commands.hpp"
#include "scalevar/operators.hpp"
#include "scalevar/residual.hpp"

namespace scalevar::cli {

namespace {

// Embedded problems; the command never reads files.
constexpr std::string_view kTrackingKink = R"({
  "curves": {"y": "abs", "abs": "abs"},
  "lagrangian": {
    "text": "(v1 - B(x))^2 + (xi*x)^2",
    "has_param": true,
    "xi": 0,
    "bindings": {"B": {"op": "box", "curve": "abs", "slot": 1}}
  },
  "interval": [-1, 1],
  "eps": [0.1]
})";

constexpr std::string_view kScaledKink = R"({
  "curves": {"y": "abs", "abs": "abs"},
  "lagrangian": {
    "text": "(xi*v1 - B(x))^2",
    "has_param": true,
    "xi": 1,
    "bindings": {"B": {"op": "box", "curve": "abs", "slot": 1}}
  },
  "interval": [-1, 1],
  "eps": [0.1]
})";

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

Check run_check(std::string name, double threshold, const std::function<double(std::string&)>& body) {
  Check c{std::move(name), 0.0, threshold, false, {}};
  try {
    c.value = body(c.detail);
    c.passed = c.value <= threshold;
  } catch (const std::exception& e) {
    c.value = NAN;
    c.detail = e.what();
  }
  return c;
}

ProblemSpec with_eps(std::string_view text, double eps) {
  ProblemSpec spec = parse_problem(text);
  spec.eps = {eps};
  revalidate(spec);
  return spec;
}

double extremal_check(std::string_view text, Complex xi, std::string& detail) {
  const ProblemSpec spec = parse_problem(text);
  const auto r = el_residual_param(spec.functional(), spec.subject(), xi, kDefaultResidualGrid, spec.ladder);
  detail = "verdict " + std::string(to_string(r.verdict));
  if (r.verdict != ExtremalVerdict::extremal) return INFINITY;
  return std::max(r.residual.sup_norm, std::abs(*r.param_value));
}

}  // namespace

Report verify_paper() {
  std::vector<Check> checks;

  checks.push_back(run_check("scaled_kink_closed_form", 1e-10, [](std::string& detail) {
    double worst = 0.0;
    for (double e : {0.2, 0.1, 0.05, 0.01}) {
      const ProblemSpec spec = with_eps(kScaledKink, e);
      const Functional f = spec.functional();
      for (double xi : {0.0, 1.0, 2.0, -0.5}) {
        const Complex v = evaluate_functional(f, spec.subject(), xi);
        worst = std::max(worst, std::abs(v - 2.0 * (xi - 1) * (xi - 1) * (1 - e)));
      }
    }
    detail = "max |Phi(|x|, xi) - 2 (xi - 1)^2 (1 - eps)| over 16 (eps, xi) pairs";
    return worst;
  }));

  checks.push_back(run_check("tracking_kink_extremal", 1e-12, [](std::string& detail) {
    return extremal_check(kTrackingKink, 0.0, detail);
  }));

  checks.push_back(run_check("scaled_kink_extremal", 1e-12, [](std::string& detail) {
    return extremal_check(kScaledKink, 1.0, detail);
  }));

  checks.push_back(run_check("scaled_kink_solve_param", 1e-10, [](std::string& detail) {
    double worst = 0.0;
    for (double e : {0.1, 0.01}) {
      const ProblemSpec spec = with_eps(kScaledKink, e);
      worst = std::max(worst, std::abs(solve_param(spec.functional(), spec.subject(), 0.0) - 1.0));
    }
    detail = "max |xi* - 1| from xi0 = 0, eps in {0.1, 0.01}";
    return worst;
  }));

  checks.push_back(run_check("product_rule", 1e-9, [](std::string& detail) {
    const Epsilon e(0.1);
    const std::pair<Curve, Curve> pairs[] = {
        {polynomial_curve({0, 1}), polynomial_curve({0, 1})},
        {polynomial_curve({0, 0, 1}), sine_curve()},
        {weierstrass_curve(0.5, 3, 25), abs_curve()}};
    double worst = 0.0;
    for (const auto& [f, g] : pairs) {
      const FunctionHandle fg = f.handle() * g.handle();
      for (int i = 0; i <= 100; ++i) {
        const double x = -1.0 + 2.0 * i / 100.0;
        const Complex lhs = box(fg, x, e);
        const Complex rhs = box(f.handle(), x, e) * g(x) + f(x) * box(g.handle(), x, e) +
                            Complex(0.0, 0.5 * e.value()) * sigma_correction(f.handle(), g.handle(), x, e);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    detail = "max product-rule defect over 3 pairs x 101 points, eps = 0.1";
    return worst;
  }));

  checks.push_back(run_check("kink_value", 0.0, [](std::string& detail) {
    double worst = 0.0;
    for (double e : {0.3, 0.1, 0.01})
      worst = std::max(worst, std::abs(box(abs_curve().handle(), 0.0, Epsilon(e)) - Complex(0.0, -1.0)));
    detail = "max |box(|x|)(0) + i| for eps in {0.3, 0.1, 0.01}";
    return worst;
  }));

  Report r;
  OrderedJson list = OrderedJson::array();
  int passed = 0;
  for (const Check& c : checks) {
    passed += c.passed;
    list.push_back({{"name", c.name},
                    {"passed", c.passed},
                    {"value", c.value},
                    {"threshold", c.threshold},
                    {"detail", c.detail}});
  }
  r.results = {{"checks", std::move(list)}, {"passed", passed}, {"total", checks.size()}};
  const bool all = passed == static_cast<int>(checks.size());
  r.verdict = all ? "pass" : "fail";
  r.exit = all ? ExitCode::ok : ExitCode::failure;
  r.inputs_digest = hex_digest(std::string(kTrackingKink) + std::string(kScaledKink));
  return r;
}

}  // namespace scalevar::cli
