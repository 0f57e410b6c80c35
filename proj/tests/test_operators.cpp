#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scalevar/curve.hpp"
#include "scalevar/error.hpp"
#include "scalevar/operators.hpp"

namespace scalevar {
namespace {

constexpr Complex I(0.0, 1.0);

void expect_near(Complex actual, Complex expected, double tol) {
  EXPECT_NEAR(actual.real(), expected.real(), tol) << actual << " vs " << expected;
  EXPECT_NEAR(actual.imag(), expected.imag(), tol) << actual << " vs " << expected;
}

const auto square = [](double x) { return x * x; };
const auto absolute = [](double x) { return std::abs(x); };
const auto identity = [](double x) { return x; };

TEST(DeltaSigma, Constant) {
  const auto five = [](double) { return 5.0; };
  EXPECT_EQ(delta_sigma(five, 0.3, Epsilon(0.1), Sign::plus), Complex(0.0));
  EXPECT_EQ(delta_sigma(five, 0.3, Epsilon(0.1), Sign::minus), Complex(0.0));
}

TEST(DeltaSigma, KinkForcesUnitSlopes) {
  EXPECT_EQ(delta_sigma(absolute, 0.0, Epsilon(0.1), Sign::plus), Complex(1.0));
  EXPECT_EQ(delta_sigma(absolute, 0.0, Epsilon(0.1), Sign::minus), Complex(-1.0));
}

TEST(DeltaSigma, SquareAtZero) {
  // ((x + e)^2 - x^2) / e = 2x + e
  expect_near(delta_sigma(square, 0.0, Epsilon(0.1), Sign::plus), 0.1, 1e-15);
}

TEST(DeltaSigma, MinusMatchesLeftQuantumDerivative) {
  const double x = 0.7, e = 0.05;
  const Complex left = -(std::sin(x - e) - std::sin(x)) / e;
  EXPECT_EQ(delta_sigma([](double t) { return std::sin(t); }, x, Epsilon(e), Sign::minus), left);
}

TEST(DeltaSigma, DomainViolationNamesAbscissa) {
  const FunctionHandle f([](double x) { return Complex(x); }, Interval{0.0, 1.0});
  try {
    delta_sigma(f, 0.95, Epsilon(0.1), Sign::plus);
    FAIL() << "expected out_of_range";
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::out_of_range);
    EXPECT_NE(std::string(err.what()).find("1.05"), std::string::npos) << err.what();
  }
}

TEST(Box, LinearIdentity) {
  for (double x : {-2.0, 0.0, 0.3, 5.0}) {
    for (double e : {0.3, 0.1, 1e-3}) expect_near(box(identity, x, Epsilon(e)), 1.0, 1e-12);
  }
}

TEST(Box, KinkIsMinusI) {
  for (double e : {0.3, 0.1, 0.01, 1e-6}) EXPECT_EQ(box(absolute, 0.0, Epsilon(e)), -I);
}

TEST(Box, SquareHasImaginaryShift) {
  // box x^2 = 2x - i e
  expect_near(box(square, 1.0, Epsilon(0.1)), Complex(2.0, -0.1), 1e-14);
}

TEST(Box, AbsInsideKinkWindow) {
  // t - i (1 - t) with t = x / e
  expect_near(box(absolute, 0.05, Epsilon(0.1)), Complex(0.5, -0.5), 1e-15);
}

TEST(BoxConj, Values) {
  expect_near(box_conj(identity, 0.4, Epsilon(0.1)), 1.0, 1e-12);
  EXPECT_EQ(box_conj(absolute, 0.0, Epsilon(0.2)), I);
  expect_near(box_conj(square, 1.0, Epsilon(0.1)), Complex(2.0, 0.1), 1e-14);
}

TEST(BoxConj, IsSignFlipOnComplexInput) {
  // f(x) = i x: box = i, and the sign-flipped operator also gives i (not -i).
  const auto f = [](double x) { return Complex(0.0, x); };
  expect_near(box(f, 0.2, Epsilon(0.1)), I, 1e-14);
  expect_near(box_conj(f, 0.2, Epsilon(0.1)), I, 1e-14);
}

TEST(BoxK, ReducesToBoxForFirstOrder) {
  const Curve c = polynomial_curve({0, 0, 1});
  for (double x : {-1.0, 0.0, 1.0, 2.5}) {
    EXPECT_EQ(box_k(c, x, Epsilon(0.1), 1), box(c.handle(), x, Epsilon(0.1)));
  }
  expect_near(box_k(c, 1.0, Epsilon(0.1), 1), Complex(2.0, -0.1), 1e-14);
}

TEST(BoxK, SecondOrderOfCubic) {
  // box^1(3x^2) = 6x - 3 i e
  expect_near(box_k(polynomial_curve({0, 0, 0, 1}), 1.0, Epsilon(0.1), 2), Complex(6.0, -0.3), 1e-13);
}

TEST(BoxK, SecondOrderOfSquareIsTwo) {
  const Curve c = polynomial_curve({0, 0, 1});
  for (double x : {-3.0, 0.0, 0.4}) {
    for (double e : {0.2, 0.01}) expect_near(box_k(c, x, Epsilon(e), 2), 2.0, 1e-12);
  }
}

TEST(BoxK, FiniteDifferenceFallbackForFirstDerivative) {
  const Curve w = weierstrass_curve(0.5, 3, 4);
  const Curve smooth([](double x) { return x * x * x; }, 1.0);
  expect_near(box_k(smooth, 1.0, Epsilon(0.1), 2), Complex(6.0, -0.3), 1e-8);
  EXPECT_NO_THROW(box_k(w, 0.2, Epsilon(0.1), 2));
}

TEST(BoxK, UnsupportedOrder) {
  const Curve smooth([](double x) { return std::sin(x); }, 1.0);
  try {
    box_k(smooth, 0.0, Epsilon(0.1), 3);
    FAIL() << "expected unsupported_order";
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::unsupported_order);
  }
  EXPECT_THROW(box_k(smooth, 0.0, Epsilon(0.1), 0), Error);
}

TEST(SigmaCorrection, Values) {
  const auto c = [](double) { return 2.0; };
  EXPECT_EQ(sigma_correction(c, c, 0.3, Epsilon(0.1)), Complex(0.0));
  // box = conj = 1 for both: 1 - 1 - 1 - 1
  expect_near(sigma_correction(identity, identity, 0.3, Epsilon(0.1)), -2.0, 1e-12);
  // box p = -0.1 i, conj p = 0.1 i, box q = conj q = 1
  expect_near(sigma_correction(square, identity, 0.0, Epsilon(0.1)), Complex(0.0, -0.2), 1e-14);
}

TEST(ClassicalDiff, Values) {
  EXPECT_EQ(classical_diff([](double) { return 3.0; }, 0.2), Complex(0.0));
  for (double h : {1e-1, 1e-3, 1e-5}) expect_near(classical_diff(square, 1.0, h), 2.0, 1e-10);
  // Taylor remainder h^2/6
  expect_near(classical_diff([](double x) { return std::sin(x); }, 0.0, 1e-5), 1.0, 1e-10);
  EXPECT_THROW(classical_diff(square, 1.0, 0.0), Error);
}

// ---------------------------------------------------------------------------
// Properties over a deterministic family of functions.

struct Sample {
  FunctionHandle f;
  const char* name;
};

std::vector<Sample> family() {
  const Curve w = weierstrass_curve(0.5, 3, 25);
  return {
      {FunctionHandle([](double x) { return Complex(x); }), "x"},
      {FunctionHandle([](double x) { return Complex(x * x - 3 * x); }), "quadratic"},
      {FunctionHandle([](double x) { return Complex(std::sin(3 * x)); }), "sin"},
      {FunctionHandle([](double x) { return Complex(std::abs(x)); }), "abs"},
      {w.handle(), "weierstrass"},
      {FunctionHandle([](double x) { return std::exp(Complex(0.5, 2.0) * x); }), "complex exp"},
      {FunctionHandle([](double x) { return Complex(std::cos(x), std::abs(x - 0.1)); }), "complex kink"},
  };
}

TEST(Properties, ProductRule) {
  std::mt19937_64 rng(20100316);
  std::uniform_real_distribution<double> xs(-1.0, 1.0);
  std::uniform_real_distribution<double> es(0.005, 0.3);
  const auto fam = family();
  double worst = 0.0;
  for (const auto& [f, fname] : fam) {
    for (const auto& [g, gname] : fam) {
      const FunctionHandle fg = f * g;
      for (int trial = 0; trial < 40; ++trial) {
        const double x = xs(rng);
        const Epsilon e(es(rng));
        const Complex lhs = box(fg, x, e);
        const Complex rhs = box(f, x, e) * g(x) + f(x) * box(g, x, e) +
                            Complex(0.0, 0.5 * e.value()) * sigma_correction(f, g, x, e);
        worst = std::max(worst, std::abs(lhs - rhs));
        ASSERT_LE(std::abs(lhs - rhs), 1e-9) << fname << " * " << gname << " at x=" << x;
      }
    }
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Properties, Linearity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto fam = family();
  for (std::size_t i = 0; i + 1 < fam.size(); ++i) {
    const auto& f = fam[i].f;
    const auto& g = fam[i + 1].f;
    const Complex alpha(u(rng), u(rng)), beta(u(rng), u(rng));
    const FunctionHandle combo = alpha * f + beta * g;
    for (int trial = 0; trial < 20; ++trial) {
      const double x = u(rng) / 2;
      const Epsilon e(0.01 + std::abs(u(rng)) / 10);
      const Complex expected = alpha * box(f, x, e) + beta * box(g, x, e);
      EXPECT_LE(std::abs(box(combo, x, e) - expected), 1e-12 * (1 + std::abs(expected)));
    }
  }
}

TEST(Properties, RealInputConjugation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto fam = family();
  for (std::size_t i = 0; i < 5; ++i) {  // the real-valued members
    for (int trial = 0; trial < 50; ++trial) {
      const double x = u(rng);
      const Epsilon e(0.2 * std::abs(u(rng)) + 1e-4);
      EXPECT_EQ(box_conj(fam[i].f, x, e), std::conj(box(fam[i].f, x, e))) << fam[i].name;
    }
  }
}

TEST(Properties, SmoothLimitIsFirstOrder) {
  // |box sin - cos| <= sup|sin''| e, observed slope close to 1.
  const auto f = [](double x) { return std::sin(x); };
  const double x = 1.0;
  std::vector<double> log_e, log_err;
  for (double e = 0.1; e > 1e-4; e *= 0.5) {
    const double err = std::abs(box(f, x, Epsilon(e)) - std::cos(x));
    EXPECT_LE(err, e);
    log_e.push_back(std::log(e));
    log_err.push_back(std::log(err));
  }
  const std::size_t n = log_e.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += log_e[i] / n, my += log_err[i] / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (log_e[i] - mx) * (log_err[i] - my);
    sxx += (log_e[i] - mx) * (log_e[i] - mx);
  }
  EXPECT_GE(sxy / sxx, 0.9);
}

}  // namespace
}  // namespace scalevar
