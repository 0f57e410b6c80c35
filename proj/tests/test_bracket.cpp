#include <gtest/gtest.h>

#include <cmath>

#include "scalevar/bracket.hpp"
#include "scalevar/error.hpp"

namespace scalevar {
namespace {

TEST(Ladder, RungsAreGeometric) {
  LadderConfig cfg;
  const auto r = cfg.rungs();
  ASSERT_EQ(r.size(), 8u);
  EXPECT_DOUBLE_EQ(r.front(), 0.1);
  EXPECT_DOUBLE_EQ(r.back(), 0.1 * std::pow(0.5, 7));
}

TEST(Ladder, Validation) {
  LadderConfig bad;
  bad.ratio = 1.0;
  EXPECT_THROW(bad.validate(), Error);
  bad = {};
  bad.count = 2;
  EXPECT_THROW(bad.validate(), Error);
  bad = {};
  bad.divergence_factor = 1.0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Bracket, AffineHasNonzeroLimit) {
  const auto r = bracket([](Epsilon e) { return Complex(2.0 - 3.0 * e.value()); });
  ASSERT_TRUE(r.limit);
  EXPECT_NEAR(r.limit->real(), 2.0, 1e-8);
  EXPECT_NEAR(r.limit->imag(), 0.0, 1e-12);
  EXPECT_EQ(r.verdict, BracketVerdict::nonzero);
  EXPECT_NEAR(r.exponent, 1.0, 1e-6);
  EXPECT_LE(r.residual, 1e-10);
}

TEST(Bracket, VanishingPowerIsZero) {
  const auto r = bracket([](Epsilon e) { return Complex(std::pow(e.value(), 0.3)); });
  EXPECT_EQ(r.verdict, BracketVerdict::zero);
  EXPECT_NEAR(r.exponent, 0.3, 1e-6);
}

TEST(Bracket, ReciprocalDiverges) {
  const auto r = bracket([](Epsilon e) { return Complex(1.0 / e.value()); });
  EXPECT_EQ(r.verdict, BracketVerdict::divergent);
  EXPECT_FALSE(r.limit.has_value());
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(Bracket, FractionalCorrectionExtrapolates) {
  // Frozen from the closed form on the ladder eps0=0.1, ratio=0.5, count=10.
  LadderConfig cfg;
  cfg.count = 10;
  const auto r = bracket([](Epsilon e) { return Complex(-12.0 + 5.0 * std::pow(e.value(), 0.63)); }, cfg);
  ASSERT_TRUE(r.limit);
  EXPECT_NEAR(r.limit->real(), -12.0, 1e-6);
  EXPECT_NEAR(r.exponent, 0.63, 1e-6);
  EXPECT_EQ(r.verdict, BracketVerdict::nonzero);
}

TEST(Bracket, ConstantDegeneratesWithoutError) {
  const Complex a(3.0, -1.5);
  const auto r = bracket([a](Epsilon) { return a; });
  ASSERT_TRUE(r.limit);
  EXPECT_EQ(*r.limit, a);
  EXPECT_EQ(r.exponent, 0.0);
  EXPECT_EQ(r.verdict, BracketVerdict::nonzero);
}

TEST(Bracket, ComplexCorrection) {
  // Residual shape of -12x + 12 i eps at x = 0.25.
  const auto r = bracket([](Epsilon e) { return Complex(-3.0, 12.0 * e.value()); });
  ASSERT_TRUE(r.limit);
  EXPECT_NEAR(std::abs(*r.limit - Complex(-3.0, 0.0)), 0.0, 1e-10);
  EXPECT_NEAR(r.exponent, 1.0, 1e-6);
}

TEST(Bracket, NoiseBelowToleranceIsZero) {
  // Non-monotone noise growing toward fine rungs stays below zero_tol.
  int call = 0;
  const auto r = bracket([&call](Epsilon e) {
    const double sign = (call++ % 2 == 0) ? 1.0 : -1.0;
    return Complex(sign * 1e-16 / (e.value() * e.value()), 0.0);
  });
  EXPECT_EQ(r.verdict, BracketVerdict::zero);
}

TEST(Bracket, SlowBlowUpIsDivergent) {
  const auto r = bracket([](Epsilon e) { return Complex(std::pow(e.value(), -0.2)); });
  EXPECT_EQ(r.verdict, BracketVerdict::divergent);
}

TEST(Bracket, OscillationIsDivergent) {
  const auto r = bracket([](Epsilon e) { return Complex(std::sin(1.0 / e.value())); });
  EXPECT_EQ(r.verdict, BracketVerdict::divergent);
}

TEST(Bracket, NonFiniteIsDivergent) {
  const auto r = bracket([](Epsilon e) {
    return e.value() < 0.01 ? Complex(std::nan(""), 0.0) : Complex(1.0);
  });
  EXPECT_EQ(r.verdict, BracketVerdict::divergent);
}

TEST(Bracket, SampleCountMismatchThrows) {
  EXPECT_THROW(bracket_samples({1.0, 2.0}, LadderConfig{}), Error);
}

TEST(Bracket, ZeroVerdictRespectsTolerance) {
  // limit 1e-6 is nonzero at zero_tol 1e-8 and zero at 1e-5.
  auto sampler = [](Epsilon e) { return Complex(1e-6 + e.value()); };
  EXPECT_EQ(bracket(sampler).verdict, BracketVerdict::nonzero);
  LadderConfig loose;
  loose.zero_tol = 1e-5;
  EXPECT_EQ(bracket(sampler, loose).verdict, BracketVerdict::zero);
}

}  // namespace
}  // namespace scalevar
