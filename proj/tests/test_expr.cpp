#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scalevar/error.hpp"
#include "scalevar/expr.hpp"
#include "scalevar/lagrangian.hpp"

namespace scalevar {
namespace {

const EpsilonVector kEps{0.1};

ArgVector args(double x, Complex y, std::vector<Complex> v, std::optional<Complex> p = {}) {
  return ArgVector{x, y, std::move(v), p};
}

TEST(Parse, PowerOverV1) {
  const Expr e = parse("v1^2", {1, false, {}});
  ASSERT_EQ(e->op, Op::pow);
  EXPECT_EQ(e->exponent, 2);
  EXPECT_EQ(e->lhs->op, Op::variable);
  EXPECT_EQ(e->lhs->var, Variable::v(1));
}

TEST(Parse, TrackingKinkLagrangian) {
  const Expr e = parse("(v1 - B(x))^2 + (xi*x)^2", {1, true, {"B"}});
  ASSERT_EQ(e->op, Op::add);
  EXPECT_TRUE(contains_external(e));
  EXPECT_EQ(print(e), "(v1 - B(x))^2 + (xi*x)^2");
}

TEST(Parse, Precedence) {
  EXPECT_EQ(print(parse("1 + 2*x^2", {1, false, {}})), "1 + 2*x^2");
  const Expr neg_pow = parse("-x^2", {1, false, {}});
  EXPECT_EQ(neg_pow->op, Op::neg);
  EXPECT_EQ(neg_pow->lhs->op, Op::pow);
  const Expr lit = parse("-2", {1, false, {}});
  EXPECT_TRUE(expr::is_constant(lit, -2.0));
  const Expr left = parse("x - y - v1", {1, false, {}});
  EXPECT_EQ(left->op, Op::sub);
  EXPECT_EQ(left->lhs->op, Op::sub);
  EXPECT_EQ(print(parse("x/(y*v1)", {1, false, {}})), "x/(y*v1)");
}

TEST(Parse, UndeclaredVariable) {
  try {
    parse("v1 + w3", {1, false, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undeclared_variable);
  }
  EXPECT_THROW(parse("v2", {1, false, {}}), Error);
  EXPECT_THROW(parse("xi", {1, false, {}}), Error);
  EXPECT_NO_THROW(parse("v2*xi", {2, true, {}}));
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse("v1 + * 2", {1, false, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("position 5"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse("", {1, false, {}}), Error);
  EXPECT_THROW(parse("(v1", {1, false, {}}), Error);
  EXPECT_THROW(parse("v1^x", {1, false, {}}), Error);
  EXPECT_THROW(parse("v1 v1", {1, false, {}}), Error);
}

TEST(Eval, Examples) {
  const Complex z = eval_expr(parse("v1^2", {1, false, {}}), args(0, 0, {{2.0, -0.1}}), kEps);
  EXPECT_NEAR(z.real(), 3.99, 1e-15);
  EXPECT_NEAR(z.imag(), -0.4, 1e-15);
  EXPECT_EQ(eval_expr(parse("i*x", {1, false, {}}), args(3, 0, {0.0}), kEps), Complex(0, 3));
  EXPECT_EQ(eval_expr(parse("xi*x", {1, true, {}}), args(2, 0, {0.0}, 0.0), kEps), Complex(0));
}

TEST(Eval, Errors) {
  try {
    eval_expr(parse("1/(x - 1)", {1, false, {}}), args(1, 0, {0.0}), kEps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::division_by_zero);
  }
  try {
    eval_expr(parse("B(x)", {1, false, {"B"}}), args(1, 0, {0.0}), kEps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unbound_reference);
  }
  EXPECT_THROW(eval_expr(parse("v1", {1, false, {}}), args(1, 0, {}), kEps), Error);
}

TEST(Eval, ExternalSeesEpsilonContext) {
  BindingTable table;
  table["B"] = Binding{[](double x, const EpsilonVector& e) { return Complex(x, e[0].value()); },
                       [](const EpsilonVector&) { return std::vector<double>{}; }};
  const Expr e = parse("B(x)", {1, false, {"B"}});
  EXPECT_EQ(eval_expr(e, args(2, 0, {0.0}), EpsilonVector{0.25}, table), Complex(2, 0.25));
}

TEST(Diff, Examples) {
  EXPECT_EQ(print(diff_expr(parse("v1^2", {1, false, {}}), Variable::v(1))), "2*v1");
  EXPECT_EQ(print(diff_expr(parse("(xi*x)^2", {1, true, {}}), Variable::xi())), "2*(xi*x)*x");
  EXPECT_TRUE(expr::is_constant(diff_expr(parse("v1^2", {1, false, {}}), Variable::y()), 0.0));
  EXPECT_TRUE(expr::is_constant(diff_expr(parse("B(x)*v1", {1, false, {"B"}}), Variable::y()), 0.0));
  EXPECT_THROW(diff_expr(parse("B(x)", {1, false, {"B"}}), Variable::x()), Error);
}

TEST(Partial, Examples) {
  const Lagrangian sq("v1^2", 1);
  EXPECT_EQ(partial(sq, 3, args(0, 0, {1.0}), kEps), Complex(2));

  BindingTable table;
  table["B"] = bind_box(abs_curve());
  const Lagrangian ex1("(v1 - B(x))^2 + (xi*x)^2", 1, true, table);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 20; ++i) {
    const auto a = args(u(rng), {u(rng), u(rng)}, {{u(rng), u(rng)}}, Complex(u(rng)));
    EXPECT_EQ(partial(ex1, 2, a, kEps), Complex(0));
  }
  EXPECT_EQ(ex1.param_slot(), 4);

  const Lagrangian yv("y*v1", 1);
  EXPECT_EQ(partial(yv, 2, args(0, 3, {5.0}), kEps), Complex(5));
  EXPECT_THROW(yv.partial(1, args(0, 3, {5.0}), kEps), Error);
  EXPECT_THROW(yv.partial(4, args(0, 3, {5.0}), kEps), Error);
}

// Central difference of eval_expr along the real axis of one slot.
Complex numeric_partial(const Lagrangian& L, int slot, ArgVector u, const EpsilonVector& eps) {
  const double h = 1e-6;
  auto shift = [&](double d) {
    ArgVector w = u;
    if (slot == 2) w.y += d;
    else if (slot == L.param_slot()) *w.param += d;
    else w.v[slot - 3] += d;
    return L(w, eps);
  };
  return (shift(h) - shift(-h)) / (2 * h);
}

TEST(Partial, SymbolicMatchesCentralDifference) {
  const char* bodies[] = {
      "(v1 - B(x))^2 + (xi*x)^2", "y*v1*v2 + exp(i*v2)/(3 + y^2)", "sin(v1)*cos(y) - xi^3*v2^-1",
      "(y + 2*x)^4 - v1*v2*xi", "exp(-y^2)*v1 + (v2 - 1)^2/2"};
  BindingTable table;
  table["B"] = bind_box(abs_curve());
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.3, 1.2);
  for (const char* body : bodies) {
    const Lagrangian L(body, 2, true, table);
    for (int i = 0; i < 100; ++i) {
      const auto a = args(u(rng), {u(rng), u(rng)}, {{u(rng), u(rng)}, {u(rng), -u(rng)}},
                          Complex(u(rng), u(rng)));
      for (int slot : {2, 3, 4, 5}) {
        const Complex sym = L.partial(slot, a, kEps);
        const Complex num = numeric_partial(L, slot, a, kEps);
        EXPECT_LE(std::abs(sym - num), 1e-6 * (1 + std::abs(sym))) << body << " slot " << slot;
      }
    }
  }
}

Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 12);
  std::uniform_int_distribution<int> small(-3, 3);
  switch (pick(rng)) {
    case 0: return expr::make_constant(static_cast<double>(small(rng)) * 0.75);
    case 1: return expr::make_constant(Complex(0, 1));
    case 2: {
      const Variable vars[] = {Variable::x(), Variable::y(), Variable::v(1), Variable::v(2), Variable::xi()};
      return expr::make_variable(vars[std::uniform_int_distribution<int>(0, 4)(rng)]);
    }
    case 3: return expr::make_external("B");
    case 4: return expr::make_binary(Op::add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return expr::make_binary(Op::sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: return expr::make_binary(Op::mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 7: return expr::make_binary(Op::div, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 8: {
      int k = small(rng);
      return expr::make_pow(random_expr(rng, depth - 1), k == 0 ? 2 : k);
    }
    case 9: return expr::make_unary(Op::neg, random_expr(rng, depth - 1));
    case 10: return expr::make_unary(Op::sin, random_expr(rng, depth - 1));
    case 11: return expr::make_unary(Op::cos, random_expr(rng, depth - 1));
    default: return expr::make_unary(Op::exp, random_expr(rng, depth - 1));
  }
}

TEST(Print, RoundTripRandomTrees) {
  std::mt19937_64 rng(5);
  const Signature sig{2, true, {"B"}};
  for (int i = 0; i < 2000; ++i) {
    const Expr e = random_expr(rng, 5);
    const std::string text = print(e);
    const Expr back = parse(text, sig);
    EXPECT_TRUE(structurally_equal(e, back)) << text << " -> " << print(back);
  }
}

TEST(Diff, LinearNodeExactly) {
  std::mt19937_64 rng(17);
  const Variable vars[] = {Variable::y(), Variable::v(1), Variable::v(2), Variable::xi()};
  for (int i = 0; i < 500; ++i) {
    const Expr a = random_expr(rng, 4);
    const Expr b = random_expr(rng, 4);
    for (const auto& var : vars) {
      const Expr lhs = diff_expr(expr::add(a, b), var);
      const Expr rhs = expr::add(diff_expr(a, var), diff_expr(b, var));
      EXPECT_TRUE(structurally_equal(lhs, rhs)) << print(a) << " | " << print(b);
    }
  }
}

}  // namespace
}  // namespace scalevar
